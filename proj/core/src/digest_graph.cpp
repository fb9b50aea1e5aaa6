#include "edd/digest_graph.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <ostream>

namespace edd {

namespace {

constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

struct Sweep {
  std::vector<std::uint32_t> dist;
  std::vector<NodeId> parent;
  NodeId farthest = 0;
  std::size_t reached = 0;
  // First non-tree edge met, if any.
  std::optional<std::pair<NodeId, NodeId>> closing_edge;
};

// Breadth-first distances from source; farthest ties broken by smallest id.
Sweep sweep_from(const DigestGraph& g, NodeId source) {
  const std::size_t n = g.node_count();
  Sweep s;
  s.dist.assign(n, kUnseen);
  s.parent.assign(n, source);
  std::vector<NodeId> queue;
  queue.reserve(n);
  queue.push_back(source);
  s.dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    for (NodeId w : g.neighbors(u)) {
      if (s.dist[w] == kUnseen) {
        s.dist[w] = s.dist[u] + 1;
        s.parent[w] = u;
        queue.push_back(w);
      } else if (w != s.parent[u] && !s.closing_edge) {
        s.closing_edge = {u, w};
      }
    }
  }
  s.reached = queue.size();
  NodeId best = source;
  for (NodeId v = 0; v < n; ++v) {
    if (s.dist[v] != kUnseen && s.dist[v] > s.dist[best]) best = v;
  }
  s.farthest = best;
  return s;
}

std::vector<NodeId> cycle_through(NodeId u, NodeId w, const std::vector<NodeId>& parent,
                                  const std::vector<std::uint32_t>& depth) {
  std::vector<NodeId> from_u{u};
  std::vector<NodeId> from_w{w};
  NodeId x = u;
  NodeId y = w;
  while (depth[x] > depth[y]) from_u.push_back(x = parent[x]);
  while (depth[y] > depth[x]) from_w.push_back(y = parent[y]);
  while (x != y) {
    from_u.push_back(x = parent[x]);
    from_w.push_back(y = parent[y]);
  }
  from_w.pop_back();  // lowest common ancestor is already the tail of from_u
  std::vector<NodeId> cycle(from_u.rbegin(), from_u.rend());
  cycle.insert(cycle.end(), from_w.begin(), from_w.end());
  return cycle;
}

// Searches the components the first sweep did not reach. A cycle there is
// reported in preference to the disconnection itself.
StructureViolation find_cycle_elsewhere(const DigestGraph& g, const std::vector<std::uint32_t>& reached) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> depth(n, kUnseen);
  std::vector<NodeId> parent(n, 0);
  std::vector<NodeId> queue;
  NodeId outsider = 0;
  bool have_outsider = false;
  for (NodeId root = 0; root < n; ++root) {
    if (reached[root] != kUnseen || depth[root] != kUnseen) continue;
    if (!have_outsider) {
      outsider = root;
      have_outsider = true;
    }
    depth[root] = 0;
    parent[root] = root;
    queue.assign(1, root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      NodeId u = queue[head];
      for (NodeId w : g.neighbors(u)) {
        if (depth[w] == kUnseen) {
          depth[w] = depth[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (w != parent[u]) {
          return {StructureViolationKind::HasCycle, cycle_through(u, w, parent, depth)};
        }
      }
    }
  }
  return {StructureViolationKind::NotConnected, {outsider}};
}

}  // namespace

NodeKind DigestGraph::kind(NodeId v) const noexcept {
  if (v < a_count_) return NodeKind::A;
  if (v < a_count_ + b_count_) return NodeKind::B;
  return NodeKind::C;
}

std::size_t DigestGraph::index(NodeId v) const noexcept {
  if (v < a_count_) return v;
  if (v < a_count_ + b_count_) return v - a_count_;
  return v - a_count_ - b_count_;
}

DigestGraph build_graph(const LabeledInstance& inst) {
  DigestGraph g;
  g.a_count_ = inst.base->p();
  g.b_count_ = inst.base->q();
  g.c_count_ = inst.c_elements.size();
  const std::size_t nodes = g.node_count();

  std::vector<std::uint32_t> degree(nodes, 0);
  for (const auto& c : inst.c_elements) {
    ++degree[g.a_node(c.a_owner)];
    ++degree[g.b_node(c.b_owner)];
  }
  for (std::size_t k = 0; k < g.c_count_; ++k) degree[g.c_node(k)] = 2;

  g.offsets_.assign(nodes + 1, 0);
  for (std::size_t v = 0; v < nodes; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.targets_.resize(g.offsets_[nodes]);

  std::vector<std::uint32_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::size_t k = 0; k < g.c_count_; ++k) {
    const auto& c = inst.c_elements[k];
    NodeId cn = g.c_node(k);
    NodeId an = g.a_node(c.a_owner);
    NodeId bn = g.b_node(c.b_owner);
    g.targets_[fill[cn]++] = an;
    g.targets_[fill[cn]++] = bn;
    g.targets_[fill[an]++] = cn;
    g.targets_[fill[bn]++] = cn;
  }
  return g;
}

std::string node_name(const DigestGraph& g, const LabeledInstance& inst, NodeId v) {
  switch (g.kind(v)) {
    case NodeKind::A: return "A" + std::to_string(g.index(v) + 1);
    case NodeKind::B: return "B" + std::to_string(g.index(v) + 1);
    case NodeKind::C: {
      const auto& c = inst.c_elements[g.index(v)];
      return "C" + std::to_string(c.value) + "#" + std::to_string(c.copy_id);
    }
  }
  return "?";
}

void write_edge_list(std::ostream& os, const DigestGraph& g, const LabeledInstance& inst) {
  for (std::size_t k = 0; k < g.c_count(); ++k) {
    NodeId cn = g.c_node(k);
    std::string c_name = node_name(g, inst, cn);
    for (NodeId owner : g.neighbors(cn)) os << node_name(g, inst, owner) << ' ' << c_name << '\n';
  }
}

const char* to_string(StructureViolationKind kind) {
  switch (kind) {
    case StructureViolationKind::NotConnected: return "NOT_CONNECTED";
    case StructureViolationKind::HasCycle: return "HAS_CYCLE";
    case StructureViolationKind::DeepSubtree: return "DEEP_SUBTREE";
  }
  return "UNKNOWN";
}

std::size_t StructureVerdict::dangler_count() const noexcept {
  std::size_t total = 0;
  for (const auto& group : danglers) total += group.danglers.size();
  return total;
}

StructureVerdict check_structure(const DigestGraph& g) {
  StructureVerdict verdict;
  const std::size_t n = g.node_count();
  if (n == 0) return verdict;

  if (n == 1) {
    verdict.is_tree = true;
    verdict.diameter = {0};
    return verdict;
  }

  // The first sweep starts at the smallest leaf and doubles as the cycle and
  // connectivity check for its component.
  NodeId start = 0;
  while (start < n && g.degree(start) != 1) ++start;
  if (start == n) start = 0;
  Sweep first = sweep_from(g, start);
  if (first.closing_edge) {
    auto [u, w] = *first.closing_edge;
    verdict.violation = StructureViolation{StructureViolationKind::HasCycle, cycle_through(u, w, first.parent, first.dist)};
    return verdict;
  }
  if (first.reached < n) {
    verdict.violation = find_cycle_elsewhere(g, first.dist);
    return verdict;
  }
  verdict.is_tree = true;

  Sweep second = sweep_from(g, first.farthest);
  for (NodeId v = second.farthest;; v = second.parent[v]) {
    verdict.diameter.push_back(v);
    if (v == first.farthest) break;
  }

  const auto& path = verdict.diameter;
  for (std::size_t pos = 1; pos + 1 < path.size(); ++pos) {
    NodeId u = path[pos];
    if (g.kind(u) == NodeKind::C || g.degree(u) <= 2) continue;
    DanglerGroup group{u, {}};
    for (NodeId x : g.neighbors(u)) {
      if (x == path[pos - 1] || x == path[pos + 1]) continue;
      auto ends = g.neighbors(x);
      NodeId leaf = ends[0] == u ? ends[1] : ends[0];
      if (g.degree(leaf) != 1) {
        verdict.violation = StructureViolation{StructureViolationKind::DeepSubtree, {x, leaf}};
        return verdict;
      }
      group.danglers.push_back({x, leaf});
    }
    verdict.danglers.push_back(std::move(group));
  }
  return verdict;
}

}  // namespace edd
