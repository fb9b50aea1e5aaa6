#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#ifndef EDD_TEST_DATA_DIR
#error "EDD_TEST_DATA_DIR must be defined"
#endif

namespace edd::testing {

namespace {

constexpr std::uint32_t kFar = std::numeric_limits<std::uint32_t>::max();

struct DisjointSets {
  std::vector<std::uint32_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::uint32_t x, std::uint32_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent[x] = y;
    return true;
  }
};

std::size_t subtree_size(const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t root,
                         std::uint32_t from) {
  std::size_t size = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{root, from}};
  while (!stack.empty()) {
    auto [v, parent] = stack.back();
    stack.pop_back();
    ++size;
    for (auto w : adj[v]) {
      if (w != parent) stack.push_back({w, v});
    }
  }
  return size;
}

}  // namespace

EddInstance figure1_instance() {
  return EddInstance{{9, 12, 15, 17, 37}, {6, 38, 46}, {{3, 6}, {12}, {15}, {17}, {8, 29}}, {{6}, {3, 8, 12, 15}, {17, 29}}};
}

EddInstance duplicates_instance() {
  return EddInstance{{18, 19}, {4, 5, 7, 8, 13}, {{5, 6, 7}, {4, 7, 8}}, {{4}, {5}, {7}, {8}, {6, 7}}};
}

EddInstance single_instance() { return EddInstance{{5}, {5}, {{5}}, {{5}}}; }

std::string data_path(const std::string& name) { return std::string(EDD_TEST_DATA_DIR) + "/" + name; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::vector<std::uint32_t>> plain_adjacency(const LabeledInstance& inst) {
  const std::uint32_t p = static_cast<std::uint32_t>(inst.base->p());
  const std::uint32_t q = static_cast<std::uint32_t>(inst.base->q());
  std::vector<std::vector<std::uint32_t>> adj(p + q + inst.c_elements.size());
  for (std::uint32_t k = 0; k < inst.c_elements.size(); ++k) {
    std::uint32_t c = p + q + k;
    std::uint32_t a = inst.c_elements[k].a_owner;
    std::uint32_t b = p + inst.c_elements[k].b_owner;
    adj[c] = {a, b};
    adj[a].push_back(c);
    adj[b].push_back(c);
  }
  return adj;
}

std::vector<std::vector<std::uint32_t>> all_pairs_distances(const std::vector<std::vector<std::uint32_t>>& adj) {
  const std::size_t n = adj.size();
  std::vector<std::vector<std::uint32_t>> dist(n, std::vector<std::uint32_t>(n, kFar));
  for (std::uint32_t s = 0; s < n; ++s) {
    std::vector<std::uint32_t> queue{s};
    dist[s][s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto u = queue[head];
      for (auto w : adj[u]) {
        if (dist[s][w] == kFar) {
          dist[s][w] = dist[s][u] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  return dist;
}

bool is_tree(const std::vector<std::vector<std::uint32_t>>& adj) {
  DisjointSets sets(adj.size());
  std::size_t edges = 0;
  for (std::uint32_t u = 0; u < adj.size(); ++u) {
    for (auto w : adj[u]) {
      if (u < w) {
        ++edges;
        if (!sets.unite(u, w)) return false;
      }
    }
  }
  return edges + 1 == adj.size();
}

bool tree_with_only_danglers(const std::vector<std::vector<std::uint32_t>>& adj) {
  if (!is_tree(adj)) return false;
  const std::size_t n = adj.size();
  if (n <= 2) return true;
  auto dist = all_pairs_distances(adj);
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (dist[u][v] > dist[x][y]) {
        x = u;
        y = v;
      }
    }
  }
  // Walk from x to y choosing the neighbour one step closer to y.
  std::vector<std::uint32_t> path{x};
  std::vector<bool> on_path(n, false);
  on_path[x] = true;
  while (path.back() != y) {
    for (auto w : adj[path.back()]) {
      if (dist[w][y] + 1 == dist[path.back()][y]) {
        path.push_back(w);
        on_path[w] = true;
        break;
      }
    }
  }
  for (auto u : path) {
    for (auto w : adj[u]) {
      if (!on_path[w] && subtree_size(adj, w, u) != 2) return false;
    }
  }
  return true;
}

bool some_assignment_has_dangler_tree(const EddInstance& inst, std::uint64_t cap) {
  auto assignments = label_duplicates(inst, cap);
  while (auto labeled = assignments.next()) {
    if (tree_with_only_danglers(plain_adjacency(*labeled))) return true;
  }
  return false;
}

bool is_cycle(const std::vector<std::vector<std::uint32_t>>& adj, const std::vector<std::uint32_t>& cycle) {
  if (cycle.size() < 3) return false;
  std::set<std::uint32_t> distinct(cycle.begin(), cycle.end());
  if (distinct.size() != cycle.size()) return false;
  auto adjacent = [&](std::uint32_t u, std::uint32_t v) {
    return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
  };
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    if (!adjacent(cycle[k], cycle[(k + 1) % cycle.size()])) return false;
  }
  return true;
}

std::vector<SimpleGraph> connected_graphs_up_to_iso(std::size_t max_nodes) {
  std::vector<SimpleGraph> out;
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t u = 1; u <= n; ++u) {
      for (std::size_t v = u + 1; v <= n; ++v) slots.push_back({u, v});
    }
    std::set<std::vector<std::pair<std::size_t, std::size_t>>> seen;
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
      SimpleGraph g(n);
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (mask & (1u << s)) g.add_edge(slots[s].first, slots[s].second);
      }
      // Connectivity by flood fill.
      std::vector<bool> reached(n + 1, false);
      std::vector<std::size_t> stack{1};
      reached[1] = true;
      std::size_t count = 1;
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (std::size_t w = 1; w <= n; ++w) {
          if (!reached[w] && g.adjacent(v, w)) {
            reached[w] = true;
            ++count;
            stack.push_back(w);
          }
        }
      }
      if (count != n) continue;
      // Canonical form: lexicographically smallest relabelled edge list.
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), std::size_t{1});
      std::vector<std::pair<std::size_t, std::size_t>> best;
      do {
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (const auto& [u, v] : g.edges()) {
          auto a = perm[u - 1];
          auto b = perm[v - 1];
          edges.push_back({std::min(a, b), std::max(a, b)});
        }
        std::sort(edges.begin(), edges.end());
        if (best.empty() || edges < best) best = edges;
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (seen.insert(best).second) out.push_back(g);
    }
  }
  return out;
}

SimpleGraph random_graph(std::uint64_t seed, std::size_t nodes) {
  std::mt19937_64 rng(seed);
  SimpleGraph g(nodes);
  for (std::size_t u = 1; u <= nodes; ++u) {
    for (std::size_t v = u + 1; v <= nodes; ++v) {
      if (rng() & 1u) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace edd::testing
