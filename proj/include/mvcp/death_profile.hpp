#ifndef MVCP_DEATH_PROFILE_HPP
#define MVCP_DEATH_PROFILE_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mvcp/errors.hpp"

namespace mvcp {

// Death function phi: probability that an arriving infection kills a host
// that currently carries k-1 infections. Stored as an explicit table
// phi(1)..phi(M); phi(0) is implicitly 0 and phi(k) = 1 for all k >= M.
//
// The table must be non-decreasing, contained in [0,1], and end with
// exactly 1.0 (the cutoff M is the table length).
class DeathProfile {
 public:
  explicit DeathProfile(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty())
      throw config_error("death profile: table must have at least one entry");
    double prev = 0.0;
    for (std::size_t k = 0; k < probs_.size(); ++k) {
      double p = probs_[k];
      if (!(p >= 0.0 && p <= 1.0))
        throw config_error("death profile: entries must lie in [0,1]");
      if (p < prev)
        throw config_error("death profile: table must be non-decreasing");
      prev = p;
    }
    if (probs_.back() != 1.0)
      throw config_error("death profile: last entry (phi(M)) must be exactly 1");
  }

  // Cutoff M: the M-th concurrent infection is always fatal.
  int cutoff() const { return static_cast<int>(probs_.size()); }

  // phi(k) for k >= 1; k >= M returns 1. Queries below 1 are a caller bug.
  double phi(int k) const {
    if (k < 1) throw std::domain_error("phi: queried below index 1");
    if (k >= cutoff()) return 1.0;
    return probs_[static_cast<std::size_t>(k - 1)];
  }

  const std::vector<double>& table() const { return probs_; }

  bool operator==(const DeathProfile& other) const = default;

 private:
  std::vector<double> probs_;
};

}  // namespace mvcp

#endif
