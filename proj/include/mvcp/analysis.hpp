#ifndef MVCP_ANALYSIS_HPP
#define MVCP_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvcp/bounds.hpp"
#include "mvcp/engine.hpp"
#include "mvcp/random_walk.hpp"
#include "mvcp/trees.hpp"

namespace mvcp {

// Inverse of the standard normal CDF (rational approximation plus one
// Halley refinement through erfc; relative error well below 1e-12).
double inverse_normal_cdf(double p);

// Wilson score interval. Estimates here sit near 0 and 1 where the normal
// approximation interval fails.
struct EstimateCI {
  double point = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  std::uint64_t successes = 0;
  std::uint64_t replicas = 0;
  double confidence = 0.99;
};

EstimateCI wilson_estimate(std::uint64_t successes, std::uint64_t replicas,
                           double confidence = 0.99);

// Replica seeds derived from a base seed: seed0, seed0+1, ...
std::vector<std::uint64_t> seed_range(std::uint64_t seed0, std::size_t count);

// Default time horizon: 50 expected single-infection lifetimes (healing
// rate 1) scaled by the initial infection count.
double default_horizon(const GraphState& initial);

// Fraction of replicas whose process went extinct by the horizon.
EstimateCI estimate_extinction(const GraphState& initial, const MvcpConfig& cfg,
                               double horizon, std::size_t replicas,
                               std::uint64_t seed0, unsigned n_threads = 0);

// Checks the bound (1-phi(1))^N on the probability that a designated vertex
// is still alive after experiencing at least N infection arrivals.
struct ImmortalityReport {
  VertexId vertex = 0;
  int threshold = 0;
  std::size_t replicas = 0;
  std::uint64_t survived = 0;
  std::uint64_t reached = 0;  // replicas where the vertex saw >= N arrivals
  double estimate = 0.0;
  double bound = 0.0;
  double std_error = 0.0;
  bool pass = false;
  bool low_power = false;  // no replica reached N arrivals
};

ImmortalityReport immortality_check(const GraphState& initial,
                                    const MvcpConfig& cfg, VertexId vertex,
                                    int threshold, std::size_t replicas,
                                    std::uint64_t seed0,
                                    const StopRule& stop = StopRule::at_events(10'000'000),
                                    unsigned n_threads = 0);

// Monte Carlo short-time drift versus the exact generator:
// fd = (E[nu_rho at dt] - nu_rho at 0) / dt, run at dt and dt/2. The pass
// tolerance is 3 standard errors plus |C|*dt, where C is the first-order
// coefficient estimated from the two step sizes (Richardson).
struct DriftFdReport {
  double rho = 0.0;
  double dt = 0.0;
  double exact = 0.0;
  double fd_dt = 0.0;
  double fd_half = 0.0;
  double se_dt = 0.0;
  double se_half = 0.0;
  double richardson_c = 0.0;
  bool pass_dt = false;
  bool pass_half = false;
  bool pass = false;
};

DriftFdReport drift_fd_check(const GraphState& initial, const MvcpConfig& cfg,
                             double rho, double dt, std::size_t replicas,
                             std::uint64_t seed0, bool fast_path = true);

// Boundary-hit probability across a lambda grid on a truncated regular
// tree, annotated with the closed-form bound values where defined.
struct SweepCell {
  double lambda = 0.0;
  EstimateCI estimate;
};

struct SweepResult {
  TreeSpec tree;
  DeathProfile profile;
  std::vector<SweepCell> cells;
  std::optional<double> lambda_star_lower;
  std::optional<double> lambda_star_upper;
  std::uint64_t seed0 = 0;
  std::size_t replicas = 0;
};

SweepResult lambda_sweep(const TreeSpec& tree, const DeathProfile& profile,
                         const std::vector<double>& lambda_grid,
                         const StopRule& stop, std::size_t replicas,
                         std::uint64_t seed0, int initial_root_load = 1,
                         unsigned n_threads = 0);

// Pooled domination check over an ensemble, running replicas one at a time
// so full event lists never accumulate in memory.
DominationReport domination_ensemble(const GraphState& initial,
                                     const MvcpConfig& cfg, const StopRule& stop,
                                     const std::vector<std::uint64_t>& seeds);

}  // namespace mvcp

#endif
