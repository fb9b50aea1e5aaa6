#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edd/instance.hpp"
#include "edd/solution.hpp"

namespace edd {

/// Undirected simple graph on nodes 1..node_count.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(std::size_t node_count) : node_count_(node_count) {}

  std::size_t node_count() const noexcept { return node_count_; }
  const std::set<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }

  /// Throws Error(InvalidArgument) on self-loops, out-of-range nodes or repeated edges.
  void add_edge(std::size_t u, std::size_t v);
  bool adjacent(std::size_t u, std::size_t v) const;
  std::size_t degree(std::size_t v) const;

 private:
  std::size_t node_count_ = 0;
  std::set<std::pair<std::size_t, std::size_t>> edges_;  // (min, max)
};

/// `GRAPH <node_count>` then one `u v` edge per line; `#` comments. Throws ParseError.
SimpleGraph parse_graph(std::string_view text);
std::string serialize_graph(const SimpleGraph& g);

/// The input graph plus t (joined to every original node) and z (joined to t).
struct AugmentedGraph {
  SimpleGraph graph;  // on 1..ell, originals first
  std::size_t original_count = 0;
  std::size_t t = 0;    // original_count + 1
  std::size_t z = 0;    // original_count + 2
  std::size_t ell = 0;  // original_count + 2

  std::size_t kappa(std::size_t v) const { return graph.degree(v); }
  std::size_t prime(std::size_t v) const noexcept { return v + ell; }
};

AugmentedGraph augment(const SimpleGraph& h);

/// Which augmented-graph node a B fragment stands for: copy 0 is b_v (pieces
/// {v, v'}), copy i >= 1 is the i-th extra fragment {v'}.
struct BOrigin {
  std::size_t node = 0;
  std::size_t copy = 0;
};

struct Reduction {
  EddInstance instance;
  AugmentedGraph augmented;
  std::vector<std::size_t> a_node;  // A index -> augmented node (A line i is node i)
  std::vector<BOrigin> b_origin;    // B index -> origin

  /// Lines such as `node A3 = t` and `node B4 = 1(1)` for the EDD header.
  std::vector<std::string> sidecar_comments() const;
};

/// Builds the double digest instance whose valid permutations correspond to
/// Hamiltonian paths of h. Requires h.node_count() >= 1.
Reduction reduce(const SimpleGraph& h);

/// Reads the Hamiltonian path of h off the A order of a valid permutation of
/// reduce(h): t and z are stripped from the end they occupy. Throws
/// Error(MalformedSolution) if neighbouring A fragments are not adjacent nodes.
std::vector<std::size_t> extract_path(const Solution& sol, const SimpleGraph& h);

bool is_hamiltonian_path(const SimpleGraph& h, const std::vector<std::size_t>& path);

/// Exhaustive search. Throws Error(CapExceeded) above max_nodes.
bool has_hamiltonian_path(const SimpleGraph& h, std::size_t max_nodes = 10);

}  // namespace edd
