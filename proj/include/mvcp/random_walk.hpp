#ifndef MVCP_RANDOM_WALK_HPP
#define MVCP_RANDOM_WALK_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "mvcp/engine.hpp"

namespace mvcp {

// One-dimensional birth-death chain with absorption at 0, jumping +1 with
// probability p_up and -1 otherwise. Only the embedded jump chain matters
// for absorption, so that is what gets simulated.
struct WalkSpec {
  double p_up;
  std::int64_t start;

  WalkSpec(double p, std::int64_t s) : p_up(p), start(s) {
    if (!(p_up >= 0.0 && p_up <= 1.0))
      throw config_error("walk spec: p_up must lie in [0,1]");
    if (start < 1) throw config_error("walk spec: start must be >= 1");
  }
};

// Up-step probability of the walk that dominates the total infection count:
//   lambda*(1-phi(1)) / (1 + lambda*(1-phi(1)) + lambda*phi(2)).
double dominating_up_probability(double lambda, const DeathProfile& profile);

// Gambler's-ruin absorption probability: 1 when p_up <= 1/2, otherwise
// ((1-p_up)/p_up)^start.
double absorption_probability(const WalkSpec& spec);

// Independent numeric route: h(k) = p*h(k+1) + (1-p)*h(k-1) on 0..truncation
// with h(0) = 1 and h(truncation) = 0, solved as a tridiagonal system.
double ruin_probability_linear_system(double p_up, std::int64_t start,
                                      std::size_t truncation);

// Exact probability of absorption within a fixed number of jumps, by
// propagating the jump-chain distribution. This is the analytic target for
// horizon-limited simulations when p_up = 1/2, where the absorption time has
// a heavy tail and no finite horizon approximates the limit probability.
double absorption_within_horizon(double p_up, std::int64_t start,
                                 std::uint64_t horizon_jumps);

struct WalkResult {
  bool absorbed;
  std::uint64_t jumps;        // jump index of absorption (when absorbed)
  std::int64_t final_value;   // walk value at the horizon (when not)
};

WalkResult simulate_walk(const WalkSpec& spec, std::uint64_t horizon_jumps,
                         std::uint64_t seed);

// Per-event domination check on realized trajectories: classifies every
// event as +1 (Infected), -1 (Heal) or -i (Killed with prior count i) and
// tests that the pooled up-step fraction does not exceed the dominating
// up probability by more than three binomial standard errors.
//
// The dominating rate bound is per infection while transmissions fire per
// incident edge, so this is a rate-level check of the chosen fixtures,
// not a pathwise coupling.
struct DominationReport {
  std::uint64_t events = 0;
  std::uint64_t up_steps = 0;
  std::uint64_t down_steps = 0;   // heals plus kills of loaded vertices
  std::uint64_t null_steps = 0;   // kills of healthy vertices
  double up_fraction = 0.0;
  double p_w = 0.0;
  double std_error = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

DominationReport domination_check(const Trajectory& trajectory,
                                  const MvcpConfig& cfg);
DominationReport domination_check(std::span<const Trajectory> trajectories,
                                  const MvcpConfig& cfg);

}  // namespace mvcp

#endif
