#ifndef MVCP_ERRORS_HPP
#define MVCP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mvcp {

// Invalid user-supplied configuration (bad profile table, bad tree spec,
// bad CLI arguments). Maps to exit code 2 in the CLI.
//
// std::domain_error is reserved for operation preconditions whose violation
// indicates a bug in the caller (e.g. the engine selecting a dead vertex);
// the CLI maps those to exit code 3.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mvcp

#endif
