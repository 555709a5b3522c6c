#ifndef MVCP_TREES_HPP
#define MVCP_TREES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mvcp/graph_state.hpp"

namespace mvcp {

// The two tree families used throughout:
//
//  - FiniteOffspring{d, n}: finite tree with offspring number d >= 2 and
//    exactly n vertices, filled level by level, left to right, from root 0.
//    Internal vertices have degree d+1, leaves degree 1, the root degree <= d.
//
//  - TruncatedRegular{d, D}: the ball of radius D in the d-regular infinite
//    tree (d >= 3). The root has d neighbors, every other interior vertex
//    has d-1 children, and depth-D vertices are flagged as boundary leaves.
struct TreeSpec {
  enum class Kind { FiniteOffspring, TruncatedRegular };
  Kind kind;
  int d;
  // Vertex budget n (FiniteOffspring) or depth D (TruncatedRegular).
  int size;

  static TreeSpec finite_offspring(int d, int n) {
    return TreeSpec{Kind::FiniteOffspring, d, n};
  }
  static TreeSpec truncated_regular(int d, int depth) {
    return TreeSpec{Kind::TruncatedRegular, d, depth};
  }

  std::string describe() const;
};

// All-healthy GraphState with the specified shape; vertices are labeled
// breadth-first from root 0. Truncated-regular trees carry boundary flags.
GraphState build_tree(const TreeSpec& spec);

// Depth of each vertex from root 0 (breadth-first labeling makes this a
// deterministic function of the spec).
std::vector<int> tree_depths(const TreeSpec& spec);

// Boundary data for a vertex subset A: N_A counts edges with exactly one
// endpoint in A, internal_edges counts edges inside A. The identity
// N_A = sum(deg) - 2 * internal_edges holds by construction.
struct SubsetBoundary {
  std::size_t subset_size;
  std::int64_t boundary_edges;
  std::int64_t internal_edges;
  std::int64_t degree_sum;
};

// Exact boundary count for A (every vertex of A must be alive).
SubsetBoundary boundary_count(const GraphState& state,
                              const std::vector<VertexId>& subset);

// Number of live edges with one endpoint in B and the other in C
// (B and C must be disjoint and alive).
std::int64_t cross_pairs(const GraphState& state,
                         const std::vector<VertexId>& b,
                         const std::vector<VertexId>& c);

// Connected components of the live subgraph, ordered by smallest member;
// each component is sorted ascending.
std::vector<std::vector<VertexId>> components_after_death(const GraphState& state);

// All connected subsets of live vertices with size <= max_size, each exactly
// once. Guarded to graphs with at most 64 live vertices.
std::vector<std::vector<VertexId>> enumerate_connected_subsets(
    const GraphState& state, std::size_t max_size);

}  // namespace mvcp

#endif
