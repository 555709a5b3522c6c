#include "mvcp/trees.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <sstream>

namespace mvcp {

std::string TreeSpec::describe() const {
  std::ostringstream os;
  if (kind == Kind::FiniteOffspring)
    os << "finite tree d=" << d << " n=" << size;
  else
    os << "regular ball d=" << d << " depth=" << size;
  return os.str();
}

namespace {

void validate(const TreeSpec& spec) {
  if (spec.kind == TreeSpec::Kind::FiniteOffspring) {
    if (spec.d < 2)
      throw config_error("tree spec: offspring number d must be >= 2");
    if (spec.size < 1) throw config_error("tree spec: vertex budget n must be >= 1");
  } else {
    if (spec.d < 3) throw config_error("tree spec: regular degree d must be >= 3");
    if (spec.size < 1) throw config_error("tree spec: depth D must be >= 1");
  }
}

struct BuiltTree {
  GraphState state;
  std::vector<int> depths;
};

BuiltTree build_with_depths(const TreeSpec& spec) {
  validate(spec);
  if (spec.kind == TreeSpec::Kind::FiniteOffspring) {
    std::size_t n = static_cast<std::size_t>(spec.size);
    GraphState g(n);
    std::vector<int> depth(n, 0);
    VertexId next = 1;
    std::queue<VertexId> q;
    q.push(0);
    while (!q.empty() && next < n) {
      VertexId parent = q.front();
      q.pop();
      for (int c = 0; c < spec.d && next < n; ++c) {
        g.add_edge(parent, next);
        depth[next] = depth[parent] + 1;
        q.push(next);
        ++next;
      }
    }
    return {std::move(g), std::move(depth)};
  }

  // Ball of radius D in the d-regular tree: level sizes 1, d, d(d-1), ...
  int d = spec.d, D = spec.size;
  std::size_t n = 1;
  std::size_t level = static_cast<std::size_t>(d);
  for (int l = 1; l <= D; ++l) {
    n += level;
    level *= static_cast<std::size_t>(d - 1);
  }
  GraphState g(n);
  std::vector<int> depth(n, 0);
  std::vector<std::uint8_t> boundary(n, 0);
  VertexId next = 1;
  std::queue<VertexId> q;
  q.push(0);
  while (!q.empty()) {
    VertexId parent = q.front();
    q.pop();
    if (depth[parent] == D) {
      boundary[parent] = 1;
      continue;
    }
    int children = (parent == 0) ? d : d - 1;
    for (int c = 0; c < children; ++c) {
      g.add_edge(parent, next);
      depth[next] = depth[parent] + 1;
      q.push(next);
      ++next;
    }
  }
  g.set_boundary_flags(std::move(boundary));
  return {std::move(g), std::move(depth)};
}

}  // namespace

GraphState build_tree(const TreeSpec& spec) { return build_with_depths(spec).state; }

std::vector<int> tree_depths(const TreeSpec& spec) {
  return build_with_depths(spec).depths;
}

SubsetBoundary boundary_count(const GraphState& state,
                              const std::vector<VertexId>& subset) {
  std::vector<std::uint8_t> member(state.vertex_count(), 0);
  for (VertexId x : subset) {
    if (x >= state.vertex_count() || !state.alive(x))
      throw std::domain_error("boundary_count: dead or missing vertex in subset");
    if (member[x])
      throw std::domain_error("boundary_count: duplicate vertex in subset");
    member[x] = 1;
  }
  std::int64_t degree_sum = 0;
  std::int64_t internal_twice = 0;
  for (VertexId x : subset) {
    degree_sum += static_cast<std::int64_t>(state.live_degree(x));
    for (VertexId y : state.neighbors(x))
      if (member[y]) ++internal_twice;
  }
  SubsetBoundary b;
  b.subset_size = subset.size();
  b.degree_sum = degree_sum;
  b.internal_edges = internal_twice / 2;
  b.boundary_edges = degree_sum - internal_twice;
  return b;
}

std::int64_t cross_pairs(const GraphState& state, const std::vector<VertexId>& b,
                         const std::vector<VertexId>& c) {
  std::vector<std::uint8_t> side(state.vertex_count(), 0);
  for (VertexId x : b) {
    if (x >= state.vertex_count() || !state.alive(x))
      throw std::domain_error("cross_pairs: dead or missing vertex");
    side[x] = 1;
  }
  for (VertexId x : c) {
    if (x >= state.vertex_count() || !state.alive(x))
      throw std::domain_error("cross_pairs: dead or missing vertex");
    if (side[x] == 1) throw std::domain_error("cross_pairs: sets overlap");
    side[x] = 2;
  }
  std::int64_t count = 0;
  for (VertexId x : b)
    for (VertexId y : state.neighbors(x))
      if (side[y] == 2) ++count;
  return count;
}

std::vector<std::vector<VertexId>> components_after_death(const GraphState& state) {
  std::vector<std::vector<VertexId>> comps;
  std::vector<std::uint8_t> seen(state.vertex_count(), 0);
  for (VertexId start = 0; start < state.vertex_count(); ++start) {
    if (seen[start] || !state.alive(start)) continue;
    std::vector<VertexId> comp;
    std::queue<VertexId> q;
    q.push(start);
    seen[start] = 1;
    while (!q.empty()) {
      VertexId x = q.front();
      q.pop();
      comp.push_back(x);
      for (VertexId y : state.neighbors(x)) {
        if (!seen[y]) {
          seen[y] = 1;
          q.push(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

namespace {

// ESU-style enumeration (Wernicke 2006): each connected subset is generated
// exactly once, rooted at its smallest member. Slots index live vertices.
struct SubsetEnumerator {
  std::size_t max_size;
  const std::vector<std::uint64_t>& nbr;
  const std::vector<VertexId>& slot_to_id;
  std::vector<std::vector<VertexId>>& out;

  void emit(std::uint64_t s) {
    std::vector<VertexId> ids;
    while (s) {
      int slot = std::countr_zero(s);
      s &= s - 1;
      ids.push_back(slot_to_id[static_cast<std::size_t>(slot)]);
    }
    out.push_back(std::move(ids));
  }

  void extend(std::uint64_t sub, std::uint64_t ext, std::uint64_t visited,
              std::uint64_t above_root) {
    emit(sub);
    if (static_cast<std::size_t>(std::popcount(sub)) == max_size) return;
    while (ext) {
      int w = std::countr_zero(ext);
      ext &= ext - 1;
      std::uint64_t grown =
          nbr[static_cast<std::size_t>(w)] & above_root & ~visited;
      extend(sub | (1ULL << w), ext | grown, visited | grown, above_root);
    }
  }
};

}  // namespace

std::vector<std::vector<VertexId>> enumerate_connected_subsets(
    const GraphState& state, std::size_t max_size) {
  std::vector<VertexId> live;
  for (VertexId x = 0; x < state.vertex_count(); ++x)
    if (state.alive(x)) live.push_back(x);
  if (live.size() > 64)
    throw config_error("enumerate_connected_subsets: more than 64 live vertices");
  if (max_size == 0) return {};

  std::vector<int> slot_of(state.vertex_count(), -1);
  for (std::size_t s = 0; s < live.size(); ++s) slot_of[live[s]] = static_cast<int>(s);
  std::vector<std::uint64_t> nbr(live.size(), 0);
  for (std::size_t s = 0; s < live.size(); ++s)
    for (VertexId y : state.neighbors(live[s]))
      nbr[s] |= 1ULL << slot_of[y];

  std::vector<std::vector<VertexId>> out;
  SubsetEnumerator enumerator{max_size, nbr, live, out};
  for (std::size_t r = 0; r < live.size(); ++r) {
    std::uint64_t above = (r + 1 < 64) ? ~((2ULL << r) - 1) : 0ULL;
    std::uint64_t root = 1ULL << r;
    std::uint64_t ext = nbr[r] & above;
    enumerator.extend(root, ext, root | ext, above);
  }
  return out;
}

}  // namespace mvcp
