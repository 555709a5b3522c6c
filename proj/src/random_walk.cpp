#include "mvcp/random_walk.hpp"

#include <cmath>

#include "mvcp/rng.hpp"

namespace mvcp {

double dominating_up_probability(double lambda, const DeathProfile& profile) {
  if (!(lambda > 0.0))
    throw std::domain_error("dominating_up_probability: lambda must be positive");
  double up = lambda * (1.0 - profile.phi(1));
  return up / (1.0 + up + lambda * profile.phi(2));
}

double absorption_probability(const WalkSpec& spec) {
  if (spec.p_up <= 0.5) return 1.0;
  double ratio = (1.0 - spec.p_up) / spec.p_up;
  return std::pow(ratio, static_cast<double>(spec.start));
}

double ruin_probability_linear_system(double p_up, std::int64_t start,
                                      std::size_t truncation) {
  if (truncation < 2)
    throw std::domain_error("ruin_probability_linear_system: truncation too small");
  if (start <= 0) return 1.0;
  if (static_cast<std::size_t>(start) >= truncation) return 0.0;
  std::size_t m = truncation - 1;  // unknowns h(1..truncation-1)
  std::vector<double> diag(m, 1.0), rhs(m, 0.0);
  const double lower = -(1.0 - p_up), upper = -p_up;
  rhs[0] = (1.0 - p_up);  // h(0) = 1
  for (std::size_t k = 1; k < m; ++k) {
    double w = lower / diag[k - 1];
    diag[k] -= w * upper;
    rhs[k] -= w * rhs[k - 1];
  }
  std::vector<double> h(m);
  h[m - 1] = rhs[m - 1] / diag[m - 1];
  for (std::size_t k = m - 1; k-- > 0;) h[k] = (rhs[k] - upper * h[k + 1]) / diag[k];
  return h[static_cast<std::size_t>(start) - 1];
}

double absorption_within_horizon(double p_up, std::int64_t start,
                                 std::uint64_t horizon_jumps) {
  if (start < 1)
    throw std::domain_error("absorption_within_horizon: start must be >= 1");
  std::size_t width = static_cast<std::size_t>(start) + horizon_jumps + 2;
  std::vector<double> cur(width, 0.0), next(width, 0.0);
  cur[static_cast<std::size_t>(start)] = 1.0;
  double absorbed = 0.0;
  for (std::uint64_t step = 0; step < horizon_jumps; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t pos = 1; pos < width - 1; ++pos) {
      double mass = cur[pos];
      if (mass == 0.0) continue;
      next[pos + 1] += mass * p_up;
      if (pos == 1)
        absorbed += mass * (1.0 - p_up);
      else
        next[pos - 1] += mass * (1.0 - p_up);
    }
    std::swap(cur, next);
  }
  return absorbed;
}

WalkResult simulate_walk(const WalkSpec& spec, std::uint64_t horizon_jumps,
                         std::uint64_t seed) {
  if (horizon_jumps < 1)
    throw config_error("simulate_walk: horizon must be >= 1");
  SplitMix64 rng(seed);
  std::int64_t pos = spec.start;
  for (std::uint64_t j = 1; j <= horizon_jumps; ++j) {
    pos += (rng.uniform01() < spec.p_up) ? 1 : -1;
    if (pos == 0) return {true, j, 0};
  }
  return {false, horizon_jumps, pos};
}

DominationReport domination_check(std::span<const Trajectory> trajectories,
                                  const MvcpConfig& cfg) {
  DominationReport rep;
  for (const Trajectory& tr : trajectories) {
    if (tr.thinned || (tr.event_count > 0 && tr.events.empty()))
      throw std::domain_error("domination_check: trajectory carries no event list");
    for (const Event& ev : tr.events) {
      if (ev.kind == Event::Kind::Heal) {
        ++rep.down_steps;
      } else if (ev.outcome == TransmissionOutcome::Infected) {
        ++rep.up_steps;
      } else if (ev.pre_count > 0) {
        ++rep.down_steps;
      } else {
        ++rep.null_steps;
      }
      ++rep.events;
    }
  }
  rep.p_w = dominating_up_probability(cfg.lambda, cfg.profile);
  if (rep.events > 0) {
    rep.up_fraction =
        static_cast<double>(rep.up_steps) / static_cast<double>(rep.events);
    rep.std_error = std::sqrt(rep.p_w * (1.0 - rep.p_w) /
                              static_cast<double>(rep.events));
  }
  rep.threshold = rep.p_w + 3.0 * rep.std_error;
  rep.pass = rep.up_fraction <= rep.threshold;
  return rep;
}

DominationReport domination_check(const Trajectory& trajectory,
                                  const MvcpConfig& cfg) {
  return domination_check(std::span<const Trajectory>(&trajectory, 1), cfg);
}

}  // namespace mvcp
