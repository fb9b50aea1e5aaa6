#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edd/instance.hpp"

namespace edd {

enum class NodeKind : std::uint8_t { A, B, C };

// Node ids are laid out A-nodes first, then B-nodes, then C-nodes, so the
// natural id order is the (kind, index) order used for tie-breaking.
using NodeId = std::uint32_t;

/// Membership graph of a labeled instance: one node per A fragment, B fragment
/// and piece, with every piece joined to its A owner and its B owner.
class DigestGraph {
 public:
  std::size_t a_count() const noexcept { return a_count_; }
  std::size_t b_count() const noexcept { return b_count_; }
  std::size_t c_count() const noexcept { return c_count_; }
  std::size_t node_count() const noexcept { return a_count_ + b_count_ + c_count_; }
  std::size_t edge_count() const noexcept { return 2 * c_count_; }

  NodeId a_node(std::size_t i) const noexcept { return static_cast<NodeId>(i); }
  NodeId b_node(std::size_t j) const noexcept { return static_cast<NodeId>(a_count_ + j); }
  NodeId c_node(std::size_t k) const noexcept { return static_cast<NodeId>(a_count_ + b_count_ + k); }

  NodeKind kind(NodeId v) const noexcept;
  // Position of the node within its own kind (0-based).
  std::size_t index(NodeId v) const noexcept;

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  friend DigestGraph build_graph(const LabeledInstance& inst);

 private:
  std::size_t a_count_ = 0;
  std::size_t b_count_ = 0;
  std::size_t c_count_ = 0;
  std::vector<std::uint32_t> offsets_;  // CSR, size node_count() + 1
  std::vector<NodeId> targets_;
};

/// O(n). Each C-node lists its A owner first, then its B owner.
DigestGraph build_graph(const LabeledInstance& inst);

/// Stable names: A1, B2, C7#1 (value and copy id).
std::string node_name(const DigestGraph& g, const LabeledInstance& inst, NodeId v);

/// Writes one `u v` line per edge, A/B endpoint first, in C-node order.
void write_edge_list(std::ostream& os, const DigestGraph& g, const LabeledInstance& inst);

enum class StructureViolationKind { NotConnected, HasCycle, DeepSubtree };

const char* to_string(StructureViolationKind kind);

struct StructureViolation {
  StructureViolationKind kind;
  // HasCycle: the cycle as a closed node sequence (first node not repeated).
  // DeepSubtree: the offending C-child of the diameter followed by its non-leaf neighbour.
  // NotConnected: one node outside the component searched first.
  std::vector<NodeId> witness;
};

struct Dangler {
  NodeId piece;  // C-node hanging on the diameter
  NodeId leaf;   // its other endpoint, an A/B node of degree 1
};

struct DanglerGroup {
  NodeId attachment;  // A/B node on the diameter
  std::vector<Dangler> danglers;
};

struct StructureVerdict {
  bool is_tree = false;
  std::vector<NodeId> diameter;        // only when is_tree
  std::vector<DanglerGroup> danglers;  // in diameter order
  std::optional<StructureViolation> violation;

  bool ok() const noexcept { return !violation.has_value(); }
  std::size_t dangler_count() const noexcept;
};

/// Decides whether the graph is a tree whose subtrees hanging on a diameter are
/// all two-node danglers. The diameter comes from a double farthest-node sweep
/// started at the smallest leaf; ties go to the smallest node id. O(n).
StructureVerdict check_structure(const DigestGraph& g);

}  // namespace edd
