#ifndef MVCP_VERSION_HPP
#define MVCP_VERSION_HPP

namespace mvcp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mvcp

#endif
