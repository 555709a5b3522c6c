// Test-side oracles: brute-force and linear-algebra reference computations
// kept independent of the implementation paths they check.
#ifndef MVCP_TESTS_ORACLES_HPP
#define MVCP_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "mvcp/graph_state.hpp"

namespace oracles {

// All connected subsets of live vertices with size <= max_size, found by
// scanning every vertex-id combination and flood-filling. Exponential; only
// for small graphs.
inline std::vector<std::vector<mvcp::VertexId>> brute_connected_subsets(
    const mvcp::GraphState& g, std::size_t max_size) {
  std::vector<mvcp::VertexId> live;
  for (mvcp::VertexId x = 0; x < g.vertex_count(); ++x)
    if (g.alive(x)) live.push_back(x);
  std::size_t n = live.size();
  if (n > 24) throw std::runtime_error("brute_connected_subsets: graph too large");

  auto connected = [&](const std::vector<mvcp::VertexId>& set) {
    if (set.empty()) return false;
    std::vector<std::uint8_t> member(g.vertex_count(), 0), seen(g.vertex_count(), 0);
    for (auto v : set) member[v] = 1;
    std::vector<mvcp::VertexId> stack{set[0]};
    seen[set[0]] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      ++reached;
      for (auto y : g.neighbors(x))
        if (member[y] && !seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    return reached == set.size();
  };

  std::vector<std::vector<mvcp::VertexId>> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > max_size) continue;
    std::vector<mvcp::VertexId> set;
    for (std::size_t b = 0; b < n; ++b)
      if (mask & (1u << b)) set.push_back(live[b]);
    if (connected(set)) out.push_back(std::move(set));
  }
  return out;
}

// Union-find over live vertices: component partition, sorted like
// components_after_death output.
inline std::vector<std::vector<mvcp::VertexId>> union_find_components(
    const mvcp::GraphState& g) {
  std::vector<mvcp::VertexId> parent(g.vertex_count());
  for (mvcp::VertexId x = 0; x < g.vertex_count(); ++x) parent[x] = x;
  std::vector<mvcp::VertexId> stack;
  auto find = [&](mvcp::VertexId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (mvcp::VertexId x = 0; x < g.vertex_count(); ++x) {
    if (!g.alive(x)) continue;
    for (auto y : g.neighbors(x)) {
      auto rx = find(x), ry = find(y);
      if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
    }
  }
  std::map<mvcp::VertexId, std::vector<mvcp::VertexId>> groups;
  for (mvcp::VertexId x = 0; x < g.vertex_count(); ++x)
    if (g.alive(x)) groups[find(x)].push_back(x);
  std::vector<std::vector<mvcp::VertexId>> out;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  return out;
}

// Dense Gaussian elimination with partial pivoting; A is row-major n x n.
inline std::vector<double> solve_dense(std::vector<double> a,
                                       std::vector<double> rhs) {
  std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (piv != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[col * n + k], a[piv * n + k]);
      std::swap(rhs[col], rhs[piv]);
    }
    double diag = a[col * n + col];
    if (std::abs(diag) < 1e-300)
      throw std::runtime_error("solve_dense: singular system");
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = a[r * n + col] / diag;
      if (f == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t ri = n; ri-- > 0;) {
    double s = rhs[ri];
    for (std::size_t k = ri + 1; k < n; ++k) s -= a[ri * n + k] * x[k];
    x[ri] = s / a[ri * n + ri];
  }
  return x;
}

// Generic absorbing-CTMC solver over an enumerable state space.
// Transitions: state -> list of (rate, next state). States with no outgoing
// transitions are absorbing.
template <typename State, typename TransitionsFn>
struct CtmcOracle {
  std::map<State, std::size_t> index;
  std::vector<State> states;
  std::vector<std::vector<std::pair<double, std::size_t>>> trans;

  CtmcOracle(const State& start, TransitionsFn transitions_of) {
    std::vector<State> frontier{start};
    index[start] = 0;
    states.push_back(start);
    while (!frontier.empty()) {
      State s = frontier.back();
      frontier.pop_back();
      std::size_t si = index[s];
      if (trans.size() <= si) trans.resize(states.size());
      for (auto& [rate, next] : transitions_of(s)) {
        auto it = index.find(next);
        std::size_t ni;
        if (it == index.end()) {
          ni = states.size();
          index[next] = ni;
          states.push_back(next);
          frontier.push_back(next);
        } else {
          ni = it->second;
        }
        trans[si].emplace_back(rate, ni);
      }
    }
    trans.resize(states.size());
  }

  // Expected time to reach any absorbing state, from the start state.
  double expected_absorption_time() const {
    std::size_t n = states.size();
    std::vector<double> a(n * n, 0.0), rhs(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      if (trans[s].empty()) {
        a[s * n + s] = 1.0;
        rhs[s] = 0.0;
        continue;
      }
      double total = 0.0;
      for (auto& [rate, next] : trans[s]) total += rate;
      // total * E[s] - sum rate * E[next] = 1
      a[s * n + s] += total;
      for (auto& [rate, next] : trans[s]) a[s * n + next] -= rate;
      rhs[s] = 1.0;
    }
    return solve_dense(std::move(a), std::move(rhs))[0];
  }

  // Probability of being absorbed in a state satisfying `success`, from the
  // start state.
  template <typename Pred>
  double absorption_probability_into(Pred success) const {
    std::size_t n = states.size();
    std::vector<double> a(n * n, 0.0), rhs(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      if (trans[s].empty()) {
        a[s * n + s] = 1.0;
        rhs[s] = success(states[s]) ? 1.0 : 0.0;
        continue;
      }
      double total = 0.0;
      for (auto& [rate, next] : trans[s]) total += rate;
      a[s * n + s] += total;
      for (auto& [rate, next] : trans[s]) a[s * n + next] -= rate;
      rhs[s] = 0.0;
    }
    return solve_dense(std::move(a), std::move(rhs))[0];
  }
};

template <typename State, typename TransitionsFn>
CtmcOracle<State, TransitionsFn> make_ctmc(const State& start,
                                           TransitionsFn transitions_of) {
  return CtmcOracle<State, TransitionsFn>(start, transitions_of);
}

}  // namespace oracles

#endif
