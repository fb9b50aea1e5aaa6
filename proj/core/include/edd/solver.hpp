#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "edd/digest_graph.hpp"
#include "edd/instance.hpp"
#include "edd/solution.hpp"

namespace edd {

struct FixedSlot {
  Index element;  // into LabeledInstance::c_elements
};

/// Pieces that may appear in any order at this point of the line: the
/// danglers hanging on one diameter node (plus the end piece when that node
/// is next to a diameter end). Elements are kept sorted by value.
struct BlockSlot {
  NodeId attachment;
  std::vector<Index> elements;
};

using Slot = std::variant<FixedSlot, BlockSlot>;

/// Every valid piece order of one labeled instance: read the slots left to
/// right, expanding each block in any order. The mirror image of each
/// expansion is also valid and is not listed separately.
struct SolutionFamily {
  std::vector<Slot> slots;
  bool canonical_orientation = false;

  std::size_t block_count() const noexcept;
  // Product of block-size factorials, saturating.
  std::uint64_t expansion_count() const noexcept;
};

/// Walks the diameter end to end, emitting diameter pieces in order and each
/// node's danglers as one block right after the piece that enters the node.
/// Requires verdict.ok(). The result is put in canonical orientation. O(n).
SolutionFamily dangler_first_search(const DigestGraph& g, const StructureVerdict& verdict,
                                    const LabeledInstance& inst);

/// Groups a piece order into runs by A owner and by B owner. Throws
/// Error(NotConsecutive) if some owner's pieces are split into several runs.
Solution induced_permutation(std::span<const Index> piece_order, const LabeledInstance& inst);

struct NoSolution {
  StructureViolation violation;
};

using LabeledResult = std::variant<SolutionFamily, NoSolution>;

/// Build the graph, check it, read off the family. O(n).
LabeledResult solve_labeled(const LabeledInstance& inst);

struct SolveLimits {
  std::uint64_t max_assignments = 10'080;
  std::uint64_t max_expansions = 10'000;
};

struct FoundFamily {
  std::uint64_t assignment_id = 0;
  LabeledInstance labeled;
  SolutionFamily family;
};

struct SolveResult {
  std::vector<FoundFamily> families;       // deduplicated, by assignment id
  std::uint64_t assignment_count = 0;      // all duplicate assignments
  std::uint64_t assignments_examined = 0;  // those that reached the structure check
  // Why nothing was found; empty when families is non-empty.
  std::optional<StructureViolationKind> reason;

  bool solved() const noexcept { return !families.empty(); }
};

/// Solves an instance whose pieces may repeat. Duplicate assignments are
/// searched depth first in label_duplicates order; partial assignments that
/// already close a cycle are skipped, and of several assignments that differ
/// only by swapping interchangeable single-piece fragments just the first is
/// tried. Requires a consistent instance (Error(InvalidArgument) otherwise).
/// Throws Error(AssignmentCapExceeded) above limits.max_assignments.
SolveResult solve(std::shared_ptr<const EddInstance> inst, SolveLimits limits = {});
SolveResult solve(const EddInstance& inst, SolveLimits limits = {});

/// Reference path: every assignment from label_duplicates through
/// solve_labeled. Same families as solve(), without the pruning.
SolveResult solve_by_enumeration(std::shared_ptr<const EddInstance> inst, SolveLimits limits = {});

struct Expansion {
  std::vector<Solution> solutions;  // canonical orientation, distinct by length
  std::vector<std::uint64_t> assignment_ids;  // labeling each solution came from
  bool truncated = false;
};

/// Enumerates block orders (first block most significant, each block in
/// lexicographic value order) and converts each piece order to a Solution.
Expansion expand_family(const SolutionFamily& family, const LabeledInstance& inst, std::uint64_t cap);

/// All distinct canonical solutions across the families of a result.
Expansion collect_solutions(const SolveResult& result, std::uint64_t cap);

/// Compact notation, e.g. `6 3 [12 15] 8 29 17`.
std::string format_family(const SolutionFamily& family, const LabeledInstance& inst);

}  // namespace edd
