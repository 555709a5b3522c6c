#include "mvcp/graph_state.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mvcp {

void GraphState::require_alive(VertexId x, const char* op) const {
  if (x >= verts_.size())
    throw std::domain_error(std::string(op) + ": vertex id out of range");
  if (!verts_[x].alive())
    throw std::domain_error(std::string(op) + ": vertex is dead");
}

bool GraphState::has_edge(VertexId u, VertexId v) const {
  const auto& nbs = adj_.at(u);
  return std::find(nbs.begin(), nbs.end(), v) != nbs.end();
}

void GraphState::add_edge(VertexId u, VertexId v) {
  require_alive(u, "add_edge");
  require_alive(v, "add_edge");
  if (u == v) throw std::domain_error("add_edge: self loops are not allowed");
  if (has_edge(u, v)) throw std::domain_error("add_edge: duplicate edge");
  adj_[u].push_back(v);
  adj_[v].push_back(u);
}

void GraphState::set_infections(VertexId x, std::int32_t count) {
  require_alive(x, "set_infections");
  if (count < 0) throw std::domain_error("set_infections: negative count");
  total_infections_ += count - verts_[x].count();
  verts_[x] = VertexState::alive_with(count);
}

void GraphState::set_boundary_flags(std::vector<std::uint8_t> flags) {
  if (!flags.empty() && flags.size() != verts_.size())
    throw std::domain_error("set_boundary_flags: size mismatch");
  boundary_ = std::move(flags);
}

std::int64_t GraphState::neighbor_infection_load(VertexId x) const {
  require_alive(x, "neighbor_infection_load");
  std::int64_t sum = 0;
  for (VertexId y : adj_[x]) sum += verts_[y].count();
  return sum;
}

void GraphState::apply_heal(VertexId x) {
  require_alive(x, "apply_heal");
  if (verts_[x].count() < 1)
    throw std::domain_error("apply_heal: vertex carries no infection");
  verts_[x].value_ -= 1;
  total_infections_ -= 1;
  ++generation_;
}

void GraphState::strip_edges(VertexId x) {
  for (VertexId nb : adj_[x]) {
    auto& list = adj_[nb];
    auto it = std::find(list.begin(), list.end(), x);
    // Swap-remove keeps the operation O(1); neighbor order stays a
    // deterministic function of the event sequence.
    *it = list.back();
    list.pop_back();
  }
  adj_[x].clear();
}

TransmissionOutcome GraphState::apply_transmission(VertexId target,
                                                   double death_draw,
                                                   const DeathProfile& profile) {
  require_alive(target, "apply_transmission");
  std::int32_t i = verts_[target].count();
  ++generation_;
  if (death_draw < profile.phi(i + 1)) {
    // The trigger infection dies with the host; it is never counted as
    // having existed on the target.
    strip_edges(target);
    total_infections_ -= i;
    verts_[target] = VertexState::dead();
    return TransmissionOutcome::Killed;
  }
  verts_[target].value_ += 1;
  total_infections_ += 1;
  return TransmissionOutcome::Infected;
}

void GraphState::apply_transmission_outcome(VertexId target,
                                            TransmissionOutcome outcome) {
  require_alive(target, "apply_transmission_outcome");
  ++generation_;
  if (outcome == TransmissionOutcome::Killed) {
    strip_edges(target);
    total_infections_ -= verts_[target].count();
    verts_[target] = VertexState::dead();
  } else {
    verts_[target].value_ += 1;
    total_infections_ += 1;
  }
}

void GraphState::remove_vertex(VertexId x) {
  require_alive(x, "remove_vertex");
  strip_edges(x);
  total_infections_ -= verts_[x].count();
  verts_[x] = VertexState::dead();
  ++generation_;
}

double GraphState::total_event_rate(const MvcpConfig& cfg) const {
  double sum = 0.0;
  for (VertexId x = 0; x < verts_.size(); ++x) sum += vertex_rate(x, cfg.lambda);
  return sum;
}

void GraphState::check_invariants() const {
  std::int64_t total = 0;
  for (VertexId x = 0; x < verts_.size(); ++x) {
    const auto& nbs = adj_[x];
    if (!verts_[x].alive()) {
      if (!nbs.empty())
        throw std::logic_error("invariant: dead vertex has incident edges");
      continue;
    }
    total += verts_[x].count();
    for (VertexId y : nbs) {
      if (y == x) throw std::logic_error("invariant: self loop");
      if (y >= verts_.size() || !verts_[y].alive())
        throw std::logic_error("invariant: edge to dead or missing vertex");
      if (!has_edge(y, x))
        throw std::logic_error("invariant: asymmetric adjacency");
    }
  }
  if (total != total_infections_)
    throw std::logic_error("invariant: stale total infection count");
}

GraphState load_edge_list(std::istream& in) {
  std::string word;
  std::size_t n = 0;
  if (!(in >> word) || word != "vertices" || !(in >> n))
    throw config_error("edge list: expected header 'vertices N'");
  GraphState g(n);
  VertexId u, v;
  while (in >> u >> v) {
    if (u >= n || v >= n)
      throw config_error("edge list: vertex id out of range");
    g.add_edge(u, v);
  }
  if (!in.eof() && in.fail())
    throw config_error("edge list: malformed edge line");
  return g;
}

void save_edge_list(const GraphState& state, std::ostream& out) {
  out << "vertices " << state.vertex_count() << "\n";
  // Canonical order: ascending (u, v) with u < v.
  for (VertexId u = 0; u < state.vertex_count(); ++u) {
    if (!state.alive(u)) continue;
    std::vector<VertexId> nbs(state.neighbors(u));
    std::sort(nbs.begin(), nbs.end());
    for (VertexId v : nbs)
      if (u < v) out << u << " " << v << "\n";
  }
}

void load_infections(GraphState& state, std::istream& in) {
  VertexId id;
  std::int32_t count;
  while (in >> id >> count) {
    if (id >= state.vertex_count())
      throw config_error("infections: vertex id out of range");
    if (count < 0) throw config_error("infections: negative count");
    state.set_infections(id, count);
  }
  if (!in.eof() && in.fail())
    throw config_error("infections: malformed line");
}

GraphState load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open graph file: " + path);
  return load_edge_list(in);
}

GraphState induced_live_subgraph(const GraphState& state,
                                 const std::vector<VertexId>& keep) {
  std::vector<std::uint8_t> member(state.vertex_count(), 0);
  for (VertexId x : keep) {
    if (x >= state.vertex_count())
      throw std::domain_error("induced_live_subgraph: id out of range");
    member[x] = 1;
  }
  GraphState g = state;
  for (VertexId x = 0; x < state.vertex_count(); ++x)
    if (g.alive(x) && !member[x]) g.remove_vertex(x);
  return g;
}

}  // namespace mvcp
