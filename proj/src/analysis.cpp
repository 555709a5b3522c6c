#include "mvcp/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace mvcp {

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("inverse_normal_cdf: p must lie in (0,1)");

  // Acklam's rational approximation.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // One Halley step against the exact CDF.
  double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  x = x - u / (1.0 + x * u / 2.0);
  return x;
}

EstimateCI wilson_estimate(std::uint64_t successes, std::uint64_t replicas,
                           double confidence) {
  if (replicas == 0) throw std::domain_error("wilson_estimate: zero replicas");
  if (successes > replicas)
    throw std::domain_error("wilson_estimate: successes exceed replicas");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::domain_error("wilson_estimate: confidence must lie in (0,1)");

  double n = static_cast<double>(replicas);
  double phat = static_cast<double>(successes) / n;
  double z = inverse_normal_cdf(0.5 + confidence / 2.0);
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (phat + z2 / (2.0 * n)) / denom;
  double half = (z / denom) *
                std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));

  EstimateCI ci;
  ci.point = phat;
  ci.lower = std::max(0.0, center - half);
  ci.upper = std::min(1.0, center + half);
  ci.successes = successes;
  ci.replicas = replicas;
  ci.confidence = confidence;
  return ci;
}

std::vector<std::uint64_t> seed_range(std::uint64_t seed0, std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t k = 0; k < count; ++k) seeds[k] = seed0 + k;
  return seeds;
}

double default_horizon(const GraphState& initial) {
  return 50.0 * static_cast<double>(std::max<std::int64_t>(
                    1, initial.total_infections()));
}

EstimateCI estimate_extinction(const GraphState& initial, const MvcpConfig& cfg,
                               double horizon, std::size_t replicas,
                               std::uint64_t seed0, unsigned n_threads) {
  if (replicas < 1) throw config_error("estimate_extinction: replicas must be >= 1");
  StopRule stop = StopRule::at_time(horizon);
  auto results = run_ensemble(initial, cfg, stop, seed_range(seed0, replicas),
                              /*thin=*/true, n_threads);
  std::uint64_t extinct = 0;
  for (const Trajectory& tr : results)
    if (tr.summary.kind == Summary::Kind::Extinction) ++extinct;
  return wilson_estimate(extinct, replicas);
}

ImmortalityReport immortality_check(const GraphState& initial,
                                    const MvcpConfig& cfg, VertexId vertex,
                                    int threshold, std::size_t replicas,
                                    std::uint64_t seed0, const StopRule& stop,
                                    unsigned n_threads) {
  if (threshold < 1) throw config_error("immortality_check: threshold must be >= 1");
  if (vertex >= initial.vertex_count())
    throw config_error("immortality_check: vertex id out of range");
  auto results = run_ensemble(initial, cfg, stop, seed_range(seed0, replicas),
                              /*thin=*/true, n_threads);

  ImmortalityReport rep;
  rep.vertex = vertex;
  rep.threshold = threshold;
  rep.replicas = replicas;
  std::uint32_t n = static_cast<std::uint32_t>(threshold);
  for (const Trajectory& tr : results) {
    std::uint32_t seen = tr.experienced[vertex];
    bool alive_at_end = tr.final_counts[vertex] >= 0;
    if (seen >= n) ++rep.reached;
    // A dead vertex died on its last recorded arrival, so surviving the
    // first N arrivals means seeing more than N, or exactly N while alive.
    if (seen > n || (seen == n && alive_at_end)) ++rep.survived;
  }
  rep.estimate = static_cast<double>(rep.survived) / static_cast<double>(replicas);
  rep.bound = std::pow(1.0 - cfg.profile.phi(1), threshold);
  rep.std_error =
      std::sqrt(rep.bound * (1.0 - rep.bound) / static_cast<double>(replicas));
  rep.pass = rep.estimate <= rep.bound + 3.0 * rep.std_error;
  rep.low_power = rep.reached == 0;
  return rep;
}

namespace {

double nu_of_final(const Trajectory& tr, double rho) {
  std::int64_t load = 0;
  for (std::int32_t c : tr.final_counts)
    if (c > 0) load += c;
  return std::pow(rho, static_cast<double>(load));
}

struct FdEstimate {
  double fd;
  double se;
};

// Mean of (nu(dt) - nu(0))/dt over replicas. When fast_path is set, a
// replica that draws a first waiting time beyond dt is settled without
// cloning the state; the draw replicates run()'s first draw exactly
// (same RateIndex total, same generator position).
FdEstimate fd_at(const GraphState& initial, const MvcpConfig& cfg, double rho,
                 double dt, std::size_t replicas, std::uint64_t seed0,
                 bool fast_path) {
  RateIndex idx(initial.vertex_count());
  idx.rebuild([&](std::size_t i) {
    return initial.vertex_rate(static_cast<VertexId>(i), cfg.lambda);
  });
  const double total0 = idx.total();
  const double nu0 =
      std::pow(rho, static_cast<double>(initial.total_infections()));

  double sum = 0.0, sumsq = 0.0;
  StopRule stop = StopRule::at_time(dt);
  RunOptions opts;
  opts.thin = true;
  for (std::size_t k = 0; k < replicas; ++k) {
    std::uint64_t seed = seed0 + k;
    double nu;
    if (fast_path && total0 > 0.0) {
      SplitMix64 rng(seed);
      double wait = rng.exponential(total0);
      nu = (wait > dt) ? nu0 : nu_of_final(run(initial, cfg, stop, seed, opts), rho);
    } else if (total0 > 0.0) {
      nu = nu_of_final(run(initial, cfg, stop, seed, opts), rho);
    } else {
      nu = nu0;
    }
    sum += nu;
    sumsq += nu * nu;
  }
  double n = static_cast<double>(replicas);
  double mean = sum / n;
  double var = std::max(0.0, (sumsq - n * mean * mean) / std::max(1.0, n - 1.0));
  double se_mean = std::sqrt(var / n);
  return {(mean - nu0) / dt, se_mean / dt};
}

}  // namespace

DriftFdReport drift_fd_check(const GraphState& initial, const MvcpConfig& cfg,
                             double rho, double dt, std::size_t replicas,
                             std::uint64_t seed0, bool fast_path) {
  if (!(dt > 0.0)) throw config_error("drift_fd_check: dt must be positive");
  if (replicas < 2) throw config_error("drift_fd_check: need at least 2 replicas");

  DriftFdReport rep;
  rep.rho = rho;
  rep.dt = dt;
  rep.exact = drift_generator(initial, cfg, rho).drift;

  FdEstimate full = fd_at(initial, cfg, rho, dt, replicas, seed0, fast_path);
  FdEstimate half = fd_at(initial, cfg, rho, dt / 2.0, replicas,
                          seed0 + replicas, fast_path);
  rep.fd_dt = full.fd;
  rep.fd_half = half.fd;
  rep.se_dt = full.se;
  rep.se_half = half.se;
  // fd(dt) ~ exact + C*dt: estimate C from the two step sizes.
  rep.richardson_c = 2.0 * (full.fd - half.fd) / dt;

  double c = std::abs(rep.richardson_c);
  rep.pass_dt = std::abs(full.fd - rep.exact) <= 3.0 * full.se + c * dt;
  rep.pass_half = std::abs(half.fd - rep.exact) <= 3.0 * half.se + c * dt / 2.0;
  rep.pass = rep.pass_dt && rep.pass_half;
  return rep;
}

SweepResult lambda_sweep(const TreeSpec& tree, const DeathProfile& profile,
                         const std::vector<double>& lambda_grid,
                         const StopRule& stop, std::size_t replicas,
                         std::uint64_t seed0, int initial_root_load,
                         unsigned n_threads) {
  if (lambda_grid.empty()) throw config_error("lambda_sweep: empty lambda grid");
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    if (!(lambda_grid[i] > 0.0))
      throw config_error("lambda_sweep: lambda values must be positive");
    if (i > 0 && lambda_grid[i] <= lambda_grid[i - 1])
      throw config_error("lambda_sweep: lambda grid must be strictly increasing");
  }
  if (stop.on_boundary_hit && tree.kind != TreeSpec::Kind::TruncatedRegular)
    throw config_error("lambda_sweep: boundary-hit sweeps need a truncated regular tree");

  GraphState base = build_tree(tree);
  base.set_infections(0, initial_root_load);

  SweepResult res{tree, profile, {}, std::nullopt, std::nullopt, seed0, replicas};
  res.lambda_star_lower =
      tree.kind == TreeSpec::Kind::TruncatedRegular && tree.d >= 3
          ? extinction_bound(tree.d, profile)
          : std::nullopt;
  res.lambda_star_upper = survival_bound(profile);

  for (double lambda : lambda_grid) {
    MvcpConfig cfg(lambda, profile);
    auto results = run_ensemble(base, cfg, stop, seed_range(seed0, replicas),
                                /*thin=*/true, n_threads);
    std::uint64_t hits = 0;
    for (const Trajectory& tr : results)
      if (tr.summary.kind == Summary::Kind::BoundaryHit) ++hits;
    res.cells.push_back({lambda, wilson_estimate(hits, replicas)});
  }
  return res;
}

DominationReport domination_ensemble(const GraphState& initial,
                                     const MvcpConfig& cfg, const StopRule& stop,
                                     const std::vector<std::uint64_t>& seeds) {
  DominationReport pooled;
  RunOptions opts;  // needs events: not thinned
  for (std::uint64_t seed : seeds) {
    Trajectory tr = run(initial, cfg, stop, seed, opts);
    DominationReport one = domination_check(tr, cfg);
    pooled.events += one.events;
    pooled.up_steps += one.up_steps;
    pooled.down_steps += one.down_steps;
    pooled.null_steps += one.null_steps;
  }
  pooled.p_w = dominating_up_probability(cfg.lambda, cfg.profile);
  if (pooled.events > 0) {
    pooled.up_fraction = static_cast<double>(pooled.up_steps) /
                         static_cast<double>(pooled.events);
    pooled.std_error = std::sqrt(pooled.p_w * (1.0 - pooled.p_w) /
                                 static_cast<double>(pooled.events));
  }
  pooled.threshold = pooled.p_w + 3.0 * pooled.std_error;
  pooled.pass = pooled.up_fraction <= pooled.threshold;
  return pooled;
}

}  // namespace mvcp
