#include "mvcp/bounds.hpp"

#include <cmath>
#include <sstream>

namespace mvcp {

namespace {

void require_degree(int d) {
  if (d < 3) throw std::domain_error("bounds: degree d must be >= 3");
}

void require_rho(double rho) {
  if (!(rho > 0.0 && rho < 1.0))
    throw std::domain_error("rho must lie strictly in (0,1)");
}

// 1 + rho + ... + rho^(i-1)
double geometric_sum(double rho, int i) {
  double s = 0.0, p = 1.0;
  for (int k = 0; k < i; ++k) {
    s += p;
    p *= rho;
  }
  return s;
}

}  // namespace

bool extinction_assumption(int d, const DeathProfile& profile) {
  require_degree(d);
  return (1.0 - profile.phi(1)) * (d - 2) + 1.0 - profile.cutoff() > 0.0;
}

std::optional<double> extinction_bound_for_load(int d, const DeathProfile& profile,
                                                int i) {
  require_degree(d);
  if (i < 1 || i > profile.cutoff() - 1)
    throw std::domain_error("bounds: load i must satisfy 1 <= i <= M-1");
  double denom = (1.0 - profile.phi(1)) * (d - 2) +
                 (1.0 - (i + 1) * profile.phi(i + 1));
  if (!(denom > 0.0)) return std::nullopt;
  return 1.0 / denom;
}

std::optional<double> extinction_bound(int d, const DeathProfile& profile) {
  if (profile.cutoff() < 2) {
    // M = 1: phi(2) = 1, denominator (1-phi(1))(d-2) - 1 with phi(1) = 1.
    require_degree(d);
    return std::nullopt;
  }
  return extinction_bound_for_load(d, profile, 1);
}

bool survival_assumption(const DeathProfile& profile) {
  return 1.0 - profile.phi(1) - profile.phi(2) > 0.0;
}

std::optional<double> survival_bound(const DeathProfile& profile) {
  double denom = 1.0 - profile.phi(1) - profile.phi(2);
  if (!(denom > 0.0)) return std::nullopt;
  return 1.0 / denom;
}

std::optional<double> dead_branch_bound(const DeathProfile& profile) {
  double denom = 1.0 - 2.0 * profile.phi(2);
  if (!(denom > 0.0)) return std::nullopt;
  return 1.0 / denom;
}

BoundSet compute_bounds(int d, const DeathProfile& profile) {
  require_degree(d);
  BoundSet bs{d,
              profile,
              extinction_assumption(d, profile),
              survival_assumption(profile),
              extinction_bound(d, profile),
              survival_bound(profile),
              dead_branch_bound(profile),
              {}};
  for (int i = 1; i <= profile.cutoff() - 1; ++i)
    if (auto v = extinction_bound_for_load(d, profile, i)) bs.lambda_i_bounds[i] = *v;
  return bs;
}

double nu_rho(const GraphState& state, const std::vector<VertexId>& subset,
              double rho) {
  require_rho(rho);
  std::int64_t load = 0;
  std::vector<std::uint8_t> seen(state.vertex_count(), 0);
  for (VertexId x : subset) {
    if (x >= state.vertex_count() || !state.alive(x))
      throw std::domain_error("nu_rho: subset must consist of live vertices");
    if (seen[x]) throw std::domain_error("nu_rho: duplicate vertex in subset");
    seen[x] = 1;
    load += state.count(x);
  }
  return std::pow(rho, static_cast<double>(load));
}

DriftReport drift_generator(const GraphState& state, const MvcpConfig& cfg,
                            double rho) {
  require_rho(rho);
  const double lambda = cfg.lambda;
  const std::int64_t total = state.total_infections();
  const double nu = std::pow(rho, static_cast<double>(total));

  double healing = 0.0, infect_surrounding = 0.0, infect_within = 0.0,
         killing = 0.0;

  for (VertexId x = 0; x < state.vertex_count(); ++x) {
    if (!state.alive(x)) continue;
    std::int32_t cx = state.count(x);
    if (cx == 0) continue;
    healing += cx * (nu / rho - nu);
    for (VertexId y : state.neighbors(x)) {
      double rate = lambda * cx;
      std::int32_t cy = state.count(y);
      double p_kill = cfg.profile.phi(cy + 1);
      double d_infect = nu * rho - nu;
      if (cy == 0)
        infect_surrounding += rate * (1.0 - p_kill) * d_infect;
      else
        infect_within += rate * (1.0 - p_kill) * d_infect;
      // A killed target loses its cy infections (zero change for cy = 0).
      double d_kill = nu * std::pow(rho, -static_cast<double>(cy)) - nu;
      killing += rate * p_kill * d_kill;
    }
  }

  DriftReport r;
  std::ostringstream os;
  os << "generator: total_infections=" << total;
  r.descriptor = os.str();
  r.rho = rho;
  r.terms = {{"healing", healing},
             {"infecting_surrounding", infect_surrounding},
             {"infecting_within", infect_within},
             {"killing", killing}};
  r.drift = healing + infect_surrounding + infect_within + killing;
  return r;
}

DriftReport drift_closed_form_uniform_report(std::int64_t a_size, std::int64_t n_a,
                                             int i, const MvcpConfig& cfg,
                                             double rho) {
  require_rho(rho);
  if (i < 1) throw std::domain_error("closed form: load i must be >= 1");
  if (a_size < 0 || n_a < 0)
    throw std::domain_error("closed form: negative set or boundary size");
  const double lambda = cfg.lambda;
  const double phi1 = cfg.profile.phi(1);
  const double phin = cfg.profile.phi(i + 1);
  const double nu = std::pow(rho, static_cast<double>(i) * a_size);
  const double scale = (1.0 - rho) * nu;
  const double geom = geometric_sum(rho, i);

  double healing = scale * (i * a_size / rho);
  double killing = scale * (lambda * i * a_size * geom * phin / std::pow(rho, i));
  double surrounding = scale * (-lambda * i * n_a * (1.0 - phi1));
  double within = scale * (-lambda * i * a_size * (1.0 - phin));

  DriftReport r;
  std::ostringstream os;
  os << "closed form uniform: |A|=" << a_size << " N_A=" << n_a << " i=" << i;
  r.descriptor = os.str();
  r.rho = rho;
  r.terms = {{"healing", healing},
             {"infecting_surrounding", surrounding},
             {"infecting_within", within},
             {"killing", killing}};
  r.drift = healing + surrounding + within + killing;
  return r;
}

double drift_closed_form_uniform(std::int64_t a_size, std::int64_t n_a, int i,
                                 const MvcpConfig& cfg, double rho) {
  return drift_closed_form_uniform_report(a_size, n_a, i, cfg, rho).drift;
}

DriftReport drift_closed_form_two_class_report(std::int64_t b_size,
                                               std::int64_t c_size,
                                               std::int64_t n_b, std::int64_t n_c,
                                               std::int64_t n_hat, int i, int j,
                                               const MvcpConfig& cfg, double rho) {
  require_rho(rho);
  if (i < 1 || j < i)
    throw std::domain_error("two-class closed form: need j >= i >= 1");
  if (b_size < 0 || c_size < 0 || n_b < 0 || n_c < 0 || n_hat < 0)
    throw std::domain_error("two-class closed form: negative count");
  if (n_hat > n_b || n_hat > n_c)
    throw std::domain_error("two-class closed form: n_hat exceeds a class boundary");

  const double lambda = cfg.lambda;
  const double phi1 = cfg.profile.phi(1);
  const double phii = cfg.profile.phi(i + 1);
  const double phij = cfg.profile.phi(j + 1);
  const double gi = geometric_sum(rho, i);
  const double gj = geometric_sum(rho, j);
  const double ri = std::pow(rho, i);
  const double rj = std::pow(rho, j);
  const double nu =
      std::pow(rho, static_cast<double>(i) * b_size + static_cast<double>(j) * c_size);
  const double scale = (1.0 - rho) * nu;

  DriftReport r;
  std::ostringstream os;
  os << "closed form two-class: |B|=" << b_size << " |C|=" << c_size
     << " N_B=" << n_b << " N_C=" << n_c << " n_hat=" << n_hat << " i=" << i
     << " j=" << j;
  r.descriptor = os.str();
  r.rho = rho;
  r.terms = {
      {"B heals", scale * (b_size * i / rho)},
      {"B infects surrounding", scale * (-lambda * i * (n_b - n_hat) * (1.0 - phi1))},
      {"B infects itself", scale * (-lambda * i * b_size * (1.0 - phii))},
      {"B kills itself", scale * (lambda * i * b_size * phii * gi / ri)},
      {"C heals", scale * (c_size * j / rho)},
      {"C infects surrounding", scale * (-lambda * j * (n_c - n_hat) * (1.0 - phi1))},
      {"C infects itself", scale * (-lambda * j * c_size * (1.0 - phij))},
      {"C kills itself", scale * (lambda * j * c_size * phij * gj / rj)},
      {"B infects C", scale * (-lambda * i * n_hat * (1.0 - phij))},
      {"C infects B", scale * (-lambda * j * n_hat * (1.0 - phii))},
      {"B kills C", scale * (lambda * i * n_hat * phij * gj / rj)},
      {"C kills B", scale * (lambda * j * n_hat * phii * gi / ri)},
  };
  double sum = 0.0;
  for (const auto& [label, value] : r.terms) sum += value;
  r.drift = sum;
  return r;
}

double drift_closed_form_two_class(std::int64_t b_size, std::int64_t c_size,
                                   std::int64_t n_b, std::int64_t n_c,
                                   std::int64_t n_hat, int i, int j,
                                   const MvcpConfig& cfg, double rho) {
  return drift_closed_form_two_class_report(b_size, c_size, n_b, n_c, n_hat, i, j,
                                            cfg, rho)
      .drift;
}

double rho_bracket(double rho, int d, const DeathProfile& profile, int i) {
  require_rho(rho);
  require_degree(d);
  if (i < 1) throw std::domain_error("rho_bracket: load i must be >= 1");
  double phin = profile.phi(i + 1);
  return rho * ((1.0 - profile.phi(1)) * (d - 2) + (1.0 - phin) -
                phin * geometric_sum(rho, i) / std::pow(rho, i));
}

RhoOptimum optimize_rho_bracket(int d, const DeathProfile& profile, int i) {
  const double step = 1e-3;
  double best_rho = step, best_val = rho_bracket(step, d, profile, i);
  for (double rho = 2 * step; rho < 1.0 - step / 2; rho += step) {
    double v = rho_bracket(rho, d, profile, i);
    if (v > best_val) {
      best_val = v;
      best_rho = rho;
    }
  }
  // Bisection refinement on the bracketing cell.
  double lo = std::max(best_rho - step, step / 2);
  double hi = std::min(best_rho + step, 1.0 - 1e-12);
  while (hi - lo > 1e-9) {
    double m1 = lo + (hi - lo) / 3.0;
    double m2 = hi - (hi - lo) / 3.0;
    if (rho_bracket(m1, d, profile, i) < rho_bracket(m2, d, profile, i))
      lo = m1;
    else
      hi = m2;
  }
  double rho = (lo + hi) / 2.0;
  return {rho, rho_bracket(rho, d, profile, i)};
}

}  // namespace mvcp
