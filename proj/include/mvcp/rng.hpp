#ifndef MVCP_RNG_HPP
#define MVCP_RNG_HPP

#include <cmath>
#include <cstdint>

namespace mvcp {

// SplitMix64 (Steele, Lea, Flood 2014). One 64-bit word of state, a fixed
// increment and a bijective finalizer, so distinct seeds give independent
// streams and replicas can be seeded by plain counters.
//
// Every stochastic decision in this codebase consumes draws in a documented
// fixed order (see engine::next_event), which makes trajectories reproducible
// from (seed, config, initial state) alone.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53 significant bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1), never returns an exact endpoint. Used for waiting
  // times so that -log(u) is finite and strictly positive.
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Exponential waiting time with the given rate (rate > 0).
  double exponential(double rate) { return -std::log(uniform_open()) / rate; }

 private:
  std::uint64_t state_;
};

}  // namespace mvcp

#endif
