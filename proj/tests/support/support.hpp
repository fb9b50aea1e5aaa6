#pragma once

// Fixtures and brute-force checks shared by the unit and acceptance tests.
// Nothing here calls into the solver or the digest graph code.

#include <cstdint>
#include <string>
#include <vector>

#include "edd/instance.hpp"
#include "edd/reduction.hpp"

namespace edd::testing {

EddInstance figure1_instance();
EddInstance duplicates_instance();  // two copies of 7
EddInstance single_instance();      // A = B = C = {5}

std::string data_path(const std::string& name);
std::string read_text(const std::string& path);

// Adjacency lists over the same node numbering as the digest graph:
// A fragments, then B fragments, then pieces.
std::vector<std::vector<std::uint32_t>> plain_adjacency(const LabeledInstance& inst);

std::vector<std::vector<std::uint32_t>> all_pairs_distances(const std::vector<std::vector<std::uint32_t>>& adj);

// Union-find pass over the edges: true iff the graph is connected and acyclic.
bool is_tree(const std::vector<std::vector<std::uint32_t>>& adj);

// True iff adj is a tree and every subtree hanging off one longest path
// consists of exactly two nodes. Uses all-pairs distances to pick the path.
bool tree_with_only_danglers(const std::vector<std::vector<std::uint32_t>>& adj);

// Whether some duplicate assignment yields a dangler-only tree, by walking
// every assignment from label_duplicates.
bool some_assignment_has_dangler_tree(const EddInstance& inst, std::uint64_t cap);

// True iff cycle lists distinct nodes that are consecutively adjacent and
// closes back to its first node.
bool is_cycle(const std::vector<std::vector<std::uint32_t>>& adj, const std::vector<std::uint32_t>& cycle);

// Every connected simple graph on 1..max_nodes nodes, one per isomorphism class.
std::vector<SimpleGraph> connected_graphs_up_to_iso(std::size_t max_nodes);

// Erdos-Renyi style draw with edge probability 1/2 from std::mt19937_64.
SimpleGraph random_graph(std::uint64_t seed, std::size_t nodes);

}  // namespace edd::testing
