#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace edd {

// Fragment length in base pairs, valid range [1, 2^63 - 1].
using Length = std::uint64_t;
// 0-based position within A, B or C.
using Index = std::uint32_t;

inline constexpr Length kMaxLength = static_cast<Length>(std::numeric_limits<std::int64_t>::max());

/// Input of the enhanced double digest problem.
///
/// a_lengths[i] is the i-th fragment of the first enzyme and ab_sets[i] the
/// lengths obtained by re-digesting it with the second enzyme; b_lengths and
/// ba_sets are the mirror image. The sets are multisets: their element order
/// carries no meaning and equality ignores it.
struct EddInstance {
  std::vector<Length> a_lengths;
  std::vector<Length> b_lengths;
  std::vector<std::vector<Length>> ab_sets;
  std::vector<std::vector<Length>> ba_sets;

  std::size_t p() const noexcept { return a_lengths.size(); }
  std::size_t q() const noexcept { return b_lengths.size(); }
  // Total number of double-digest pieces, counted on the AB side.
  std::size_t c_count() const noexcept;

  friend bool operator==(const EddInstance& lhs, const EddInstance& rhs);
};

/// Parses the line-oriented EDD text format. Throws ParseError.
EddInstance parse_instance(std::string_view text);

/// Canonical text form; set elements are written in ascending order. Each
/// header comment becomes a `# ...` line after the version line.
std::string serialize_instance(const EddInstance& inst,
                               std::span<const std::string> header_comments = {});

enum class ConsistencyRule { SumA, SumB, UnionMismatch, Count };

const char* to_string(ConsistencyRule rule);

struct ConsistencyViolation {
  ConsistencyRule rule;
  std::optional<std::size_t> index;  // 0-based fragment index for SumA/SumB
  std::string detail;
};

struct ConsistencyReport {
  std::vector<ConsistencyViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(ConsistencyRule rule) const noexcept;
};

/// Checks the three length identities every real digest satisfies: fragment
/// sums, equal AB/BA unions, and |C| = p + q - 1. Reports every failure.
/// Throws Error(InvalidArgument) if the set counts do not match p and q.
ConsistencyReport validate_consistency(const EddInstance& inst);

/// One piece of C with both owning fragments resolved.
struct LabeledLength {
  Length value = 0;
  Index a_owner = 0;
  Index b_owner = 0;
  Index copy_id = 1;  // 1-based among pieces sharing this value

  friend bool operator==(const LabeledLength&, const LabeledLength&) = default;
};

/// An instance where every piece has been tied to exactly one A and one B
/// fragment. c_elements is ordered by a_owner, then by value within AB_i; only
/// b_owner differs between the labelings of one instance.
struct LabeledInstance {
  std::shared_ptr<const EddInstance> base;
  std::vector<LabeledLength> c_elements;
  std::uint64_t assignment_id = 0;

  std::size_t n() const noexcept { return c_elements.size(); }
};

/// Copies of one value that occurs more than once in C.
struct ValueGroup {
  Length value = 0;
  std::vector<Index> elements;  // c_elements indices, in copy_id order
  std::vector<Index> b_owners;  // owning B fragment of each BA-side copy, ascending
};

/// Shared precomputation for enumerating duplicate assignments. prototype has
/// b_owner resolved for every value that occurs once; groups lists the rest in
/// ascending value order.
struct LabelingPlan {
  std::shared_ptr<const EddInstance> base;
  std::vector<LabeledLength> prototype;
  std::vector<ValueGroup> groups;
  std::uint64_t assignment_count = 1;  // product of m_v!, saturating at uint64 max
};

/// Builds the plan. Requires validate_consistency(*base).ok().
LabelingPlan make_labeling_plan(std::shared_ptr<const EddInstance> base);

/// Lazily enumerates every combination of per-value bijections between the
/// AB-side and BA-side copies. Order: groups by ascending value, the first
/// group most significant; within a group, bijections in lexicographic order.
class DuplicateAssignments {
 public:
  explicit DuplicateAssignments(LabelingPlan plan);

  std::uint64_t size() const noexcept { return plan_.assignment_count; }
  const LabelingPlan& plan() const noexcept { return plan_; }

  std::optional<LabeledInstance> next();

 private:
  LabelingPlan plan_;
  std::vector<std::vector<Index>> matchings_;
  std::uint64_t next_id_ = 0;
  bool exhausted_ = false;
};

/// Throws Error(AssignmentCapExceeded) when the number of assignments is above cap.
DuplicateAssignments label_duplicates(const EddInstance& inst, std::uint64_t cap);
DuplicateAssignments label_duplicates(std::shared_ptr<const EddInstance> inst, std::uint64_t cap);

// Number of pieces minus the number of distinct piece values.
std::size_t duplicate_count(const EddInstance& inst);

}  // namespace edd
