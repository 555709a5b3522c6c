#ifndef MVCP_GRAPH_STATE_HPP
#define MVCP_GRAPH_STATE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mvcp/death_profile.hpp"
#include "mvcp/errors.hpp"

namespace mvcp {

using VertexId = std::uint32_t;

// A vertex is either alive carrying `count` infections (count >= 0) or dead.
// Dead is absorbing; no operation revives a vertex.
class VertexState {
 public:
  static VertexState healthy() { return VertexState(0); }
  static VertexState alive_with(std::int32_t count) { return VertexState(count); }
  static VertexState dead() { return VertexState(kDeadValue); }

  bool alive() const { return value_ >= 0; }
  // Infection count; only meaningful for alive vertices (dead reports 0).
  std::int32_t count() const { return alive() ? value_ : 0; }

  bool operator==(const VertexState& other) const = default;

 private:
  static constexpr std::int32_t kDeadValue = -1;
  explicit VertexState(std::int32_t v) : value_(v) {}
  std::int32_t value_;

  friend class GraphState;
};

// Simulation parameters: infection rate lambda and the death profile.
// The healing rate is fixed at 1 and is not configurable.
struct MvcpConfig {
  double lambda;
  DeathProfile profile;

  MvcpConfig(double lambda_, DeathProfile profile_)
      : lambda(lambda_), profile(std::move(profile_)) {
    if (!(lambda > 0.0)) throw config_error("config: lambda must be positive");
  }
};

enum class TransmissionOutcome { Infected, Killed };

// Mutable process state: per-vertex status plus the live adjacency.
// Edges are undirected, loop-free, and never touch a dead vertex; killing a
// vertex strips all incident edges. Vertex ids are stable tombstones, so
// event logs can be replayed against the initial state.
class GraphState {
 public:
  explicit GraphState(std::size_t vertex_count)
      : verts_(vertex_count, VertexState::healthy()), adj_(vertex_count) {}

  std::size_t vertex_count() const { return verts_.size(); }

  bool alive(VertexId x) const { return verts_.at(x).alive(); }
  std::int32_t count(VertexId x) const { return verts_.at(x).count(); }
  const VertexState& vertex(VertexId x) const { return verts_.at(x); }

  const std::vector<VertexId>& neighbors(VertexId x) const { return adj_.at(x); }
  std::size_t live_degree(VertexId x) const { return adj_.at(x).size(); }
  bool has_edge(VertexId u, VertexId v) const;

  // Construction-time mutators.
  void add_edge(VertexId u, VertexId v);
  void set_infections(VertexId x, std::int32_t count);
  // Structural removal (used to form induced subgraphs); same bookkeeping as
  // a kill, without the process semantics.
  void remove_vertex(VertexId x);

  // Boundary flags mark depth-D leaves of truncated regular trees; the
  // engine uses them for the boundary-hit stop rule.
  void set_boundary_flags(std::vector<std::uint8_t> flags);
  bool has_boundary_flags() const { return !boundary_.empty(); }
  bool is_boundary(VertexId x) const {
    return !boundary_.empty() && boundary_.at(x) != 0;
  }
  const std::vector<std::uint8_t>& boundary_flags() const { return boundary_; }

  // Sum of infection counts over the alive neighbors of x (x must be alive).
  std::int64_t neighbor_infection_load(VertexId x) const;

  // Removes one infection from x (x must be alive with count >= 1).
  void apply_heal(VertexId x);

  // An infection arrives at `target` (which must be alive, with current
  // count i). If death_draw < phi(i+1) the target dies: its i infections
  // and all incident edges are removed. Otherwise its count becomes i+1.
  TransmissionOutcome apply_transmission(VertexId target, double death_draw,
                                         const DeathProfile& profile);

  // Replay variant: applies a recorded outcome without a random draw.
  void apply_transmission_outcome(VertexId target, TransmissionOutcome outcome);

  // Total infection count over alive vertices.
  std::int64_t total_infections() const { return total_infections_; }

  // Sum over alive x of count(x) * (1 + lambda * live_degree(x)).
  // Zero exactly when no infections remain.
  double total_event_rate(const MvcpConfig& cfg) const;

  // Rate contribution of a single vertex (0 for dead or healthy vertices).
  double vertex_rate(VertexId x, double lambda) const {
    const VertexState& v = verts_[x];
    if (!v.alive() || v.count() == 0) return 0.0;
    return static_cast<double>(v.count()) *
           (1.0 + lambda * static_cast<double>(adj_[x].size()));
  }

  std::uint64_t generation() const { return generation_; }

  // Throws std::logic_error if a structural invariant is broken
  // (asymmetric adjacency, edges at dead vertices, self loops, stale
  // infection total). Test and debugging aid.
  void check_invariants() const;

  bool operator==(const GraphState& other) const {
    return verts_ == other.verts_ && adj_ == other.adj_;
  }

 private:
  void require_alive(VertexId x, const char* op) const;
  void strip_edges(VertexId x);

  std::vector<VertexState> verts_;
  std::vector<std::vector<VertexId>> adj_;
  std::vector<std::uint8_t> boundary_;
  std::int64_t total_infections_ = 0;
  std::uint64_t generation_ = 0;
};

// Plain-text graph format: a header line "vertices N" followed by one
// "u v" pair of 0-based ids per line. Initial infections travel separately
// as "id count" lines.
GraphState load_edge_list(std::istream& in);
void save_edge_list(const GraphState& state, std::ostream& out);
void load_infections(GraphState& state, std::istream& in);

GraphState load_edge_list_file(const std::string& path);

// Copy of `state` with every vertex outside `keep` removed (ids preserved).
GraphState induced_live_subgraph(const GraphState& state,
                                 const std::vector<VertexId>& keep);

}  // namespace mvcp

#endif
