#ifndef MVCP_BOUNDS_HPP
#define MVCP_BOUNDS_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvcp/graph_state.hpp"

namespace mvcp {

// --- Closed-form lambda bounds on the d-regular infinite tree ---
//
// extinction_bound: lower bound on lambda_* (the process dies out for all
//   lambda below it). Defined when its denominator
//   (1-phi(1))(d-2) + (1-2*phi(2)) is positive.
// extinction_assumption: the hypothesis (1-phi(1))(d-2) + 1 - M > 0 under
//   which the die-out statement is proved; reported as a flag alongside the
//   bound value.
// extinction_bound_for_load(i): the same bound when every initially infected
//   vertex carries i infections; defined when
//   (1-phi(1))(d-2) + 1 - (i+1)*phi(i+1) > 0. At i = 1 it coincides exactly
//   with extinction_bound.
// survival_bound: upper bound on lambda^* (the process survives for all
//   lambda above it). Defined when 1 - phi(1) - phi(2) > 0.
// dead_branch_bound: the weaker bound 1/(1-2*phi(2)) that applies to a set
//   whose outside neighbors were all severed by deaths; strictly exceeds
//   extinction_bound whenever both are defined and d >= 3.

bool extinction_assumption(int d, const DeathProfile& profile);
std::optional<double> extinction_bound(int d, const DeathProfile& profile);
std::optional<double> extinction_bound_for_load(int d, const DeathProfile& profile,
                                                int i);
bool survival_assumption(const DeathProfile& profile);
std::optional<double> survival_bound(const DeathProfile& profile);
std::optional<double> dead_branch_bound(const DeathProfile& profile);

struct BoundSet {
  int d;
  DeathProfile profile;
  bool extinction_assumption_holds;
  bool survival_assumption_holds;
  std::optional<double> lambda_star_lower;
  std::optional<double> lambda_star_upper;
  std::optional<double> dead_branch;
  // i -> bound for uniform initial load i, for 1 <= i <= M-1 where defined.
  std::map<int, double> lambda_i_bounds;
};

BoundSet compute_bounds(int d, const DeathProfile& profile);

// --- The rho functional and drift calculators ---

// nu_rho = rho^(total infections on A); rho must lie strictly in (0,1).
double nu_rho(const GraphState& state, const std::vector<VertexId>& subset,
              double rho);

struct DriftReport {
  std::string descriptor;
  double rho = 0.0;
  double drift = 0.0;
  // Term-by-term breakdown (healing / infecting surrounding / infecting
  // within / killing for the generator; table rows for the closed forms).
  std::vector<std::pair<std::string, double>> terms;
  // Set by callers comparing a closed form against the generator.
  std::optional<double> closed_form;
};

// Exact generator drift of nu_rho at the given configuration:
// sum over every possible single event of rate * (nu after - nu before),
// with the functional evaluated on the set of all unhealthy live vertices.
// Heal events carry rate count(x); each directed live edge (x,y) carries
// transmission rate lambda*count(x), split between outcome Infected
// (weight 1-phi(c_y+1), factor rho) and Killed (weight phi(c_y+1), factor
// rho^-c_y).
DriftReport drift_generator(const GraphState& state, const MvcpConfig& cfg,
                            double rho);

// Closed-form drift for a set A of a_size vertices, each carrying i
// infections, with n_a outside-pointing edges:
//   (1-rho) * rho^(i*|A|) * { i|A|/rho
//       + lambda*i*|A|*(rho^(i-1)+...+1)*phi(i+1)/rho^i
//       - lambda*i*n_a*(1-phi(1)) - lambda*i*|A|*(1-phi(i+1)) }
// The intra-set channels are aggregated per vertex (strength |A|), not per
// intra-set edge; the value therefore matches drift_generator exactly when
// 2 * (intra-set edges) = |A|, i.e. when A induces a perfect matching.
double drift_closed_form_uniform(std::int64_t a_size, std::int64_t n_a, int i,
                                 const MvcpConfig& cfg, double rho);
DriftReport drift_closed_form_uniform_report(std::int64_t a_size, std::int64_t n_a,
                                             int i, const MvcpConfig& cfg,
                                             double rho);

// Two-class closed form: B carries i infections per vertex, C carries j
// (j >= i >= 1), n_hat edges run between B and C. Same per-vertex intra-class
// aggregation; cross-class channels are exact edge counts.
double drift_closed_form_two_class(std::int64_t b_size, std::int64_t c_size,
                                   std::int64_t n_b, std::int64_t n_c,
                                   std::int64_t n_hat, int i, int j,
                                   const MvcpConfig& cfg, double rho);
DriftReport drift_closed_form_two_class_report(std::int64_t b_size,
                                               std::int64_t c_size,
                                               std::int64_t n_b, std::int64_t n_c,
                                               std::int64_t n_hat, int i, int j,
                                               const MvcpConfig& cfg, double rho);

// The rho-dependent bracket whose sign drives the uniform-load bound:
//   rho * [ (1-phi(1))(d-2) + (1-phi(i+1)) - phi(i+1)(rho^(i-1)+...+1)/rho^i ]
// Non-decreasing in rho on (0,1); its supremum (at rho -> 1) is the bound
// denominator.
double rho_bracket(double rho, int d, const DeathProfile& profile, int i);

// Deterministic grid-plus-bisection maximization of rho_bracket over (0,1):
// grid step 1e-3, then bisection refinement of the best cell to width 1e-9.
struct RhoOptimum {
  double rho;
  double value;
};
RhoOptimum optimize_rho_bracket(int d, const DeathProfile& profile, int i);

}  // namespace mvcp

#endif
