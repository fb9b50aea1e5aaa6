#include "edd/solver.hpp"

#include <algorithm>
#include <compare>
#include <limits>
#include <set>
#include <sstream>

#include "edd/error.hpp"

namespace edd {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::numeric_limits<std::uint64_t>::max();
  return out;
}

std::uint64_t saturating_factorial(std::size_t k) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f = saturating_mul(f, i);
  return f;
}

Length value_of(const LabeledInstance& inst, Index element) { return inst.c_elements[element].value; }

void sort_by_value(std::vector<Index>& elements, const LabeledInstance& inst) {
  std::sort(elements.begin(), elements.end(), [&](Index x, Index y) {
    Length vx = value_of(inst, x);
    Length vy = value_of(inst, y);
    return vx != vy ? vx < vy : x < y;
  });
}

// Length-level description of a family, flattened in slot order: each slot's
// size and values, then per slot the owner lengths that tie it in place.
using FamilySignature = std::vector<Length>;

struct SlotOwners {
  Length tag;  // 0 fixed, 1 block on an A fragment, 2 block on a B fragment
  Length first;
  Length second;

  friend auto operator<=>(const SlotOwners&, const SlotOwners&) = default;
};

SlotOwners owners_of(const Slot& slot, const LabeledInstance& inst) {
  const EddInstance& base = *inst.base;
  if (const auto* fixed = std::get_if<FixedSlot>(&slot)) {
    const auto& c = inst.c_elements[fixed->element];
    return {0, base.a_lengths[c.a_owner], base.b_lengths[c.b_owner]};
  }
  const auto& block = std::get<BlockSlot>(slot);
  // The attachment is whichever owner all block members share.
  const auto& first = inst.c_elements[block.elements.front()];
  bool on_a = std::all_of(block.elements.begin(), block.elements.end(),
                          [&](Index e) { return inst.c_elements[e].a_owner == first.a_owner; });
  return on_a ? SlotOwners{1, base.a_lengths[first.a_owner], 0} : SlotOwners{2, base.b_lengths[first.b_owner], 0};
}

std::span<const Index> elements_of(const Slot& slot) {
  if (const auto* fixed = std::get_if<FixedSlot>(&slot)) return {&fixed->element, 1};
  return std::get<BlockSlot>(slot).elements;
}

// Compares the value lists of two slots (block members are sorted by value).
std::strong_ordering compare_values(const Slot& x, const Slot& y, const LabeledInstance& inst) {
  auto ex = elements_of(x);
  auto ey = elements_of(y);
  for (std::size_t k = 0; k < ex.size() && k < ey.size(); ++k) {
    if (auto c = value_of(inst, ex[k]) <=> value_of(inst, ey[k]); c != 0) return c;
  }
  return ex.size() <=> ey.size();
}

FamilySignature signature_of(const SolutionFamily& family, const LabeledInstance& inst) {
  FamilySignature sig;
  for (const auto& slot : family.slots) {
    auto elements = elements_of(slot);
    sig.push_back(elements.size());
    for (Index e : elements) sig.push_back(value_of(inst, e));
  }
  for (const auto& slot : family.slots) {
    SlotOwners o = owners_of(slot, inst);
    sig.insert(sig.end(), {o.tag, o.first, o.second});
  }
  return sig;
}

// Keeps the reading direction whose slot values, then slot owners, are
// lexicographically smaller.
void orient(SolutionFamily& family, const LabeledInstance& inst) {
  const auto& slots = family.slots;
  const std::size_t m = slots.size();
  std::strong_ordering forward_vs_back = std::strong_ordering::equal;
  for (std::size_t k = 0; k < m && forward_vs_back == 0; ++k) {
    forward_vs_back = compare_values(slots[k], slots[m - 1 - k], inst);
  }
  for (std::size_t k = 0; k < m && forward_vs_back == 0; ++k) {
    forward_vs_back = owners_of(slots[k], inst) <=> owners_of(slots[m - 1 - k], inst);
  }
  if (forward_vs_back > 0) std::reverse(family.slots.begin(), family.slots.end());
  family.canonical_orientation = true;
}

std::vector<Index> expansion_order(const std::vector<Slot>& slots, const std::vector<std::vector<Index>>& blocks) {
  std::vector<Index> order;
  std::size_t b = 0;
  for (const auto& slot : slots) {
    if (const auto* fixed = std::get_if<FixedSlot>(&slot)) {
      order.push_back(fixed->element);
    } else {
      order.insert(order.end(), blocks[b].begin(), blocks[b].end());
      ++b;
    }
  }
  return order;
}

// Union-find over A/B nodes with undo, for cycle pruning during the search.
class UndoableUnionFind {
 public:
  explicit UndoableUnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<Index>(i);
  }

  Index find(Index x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  bool connected(Index x, Index y) const { return find(x) == find(y); }

  // Precondition: !connected(x, y).
  void unite(Index x, Index y) {
    x = find(x);
    y = find(y);
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    history_.push_back(y);
  }

  void undo() {
    Index y = history_.back();
    history_.pop_back();
    Index x = parent_[y];
    size_[x] -= size_[y];
    parent_[y] = y;
  }

 private:
  std::vector<Index> parent_;
  std::vector<Index> size_;
  std::vector<Index> history_;
};

// Collects families from labeled instances in assignment order, dropping ones
// that describe the same layouts as an earlier family.
class FamilyCollector {
 public:
  void offer(LabeledInstance labeled, SolveResult& result) {
    ++result.assignments_examined;
    auto outcome = solve_labeled(labeled);
    if (auto* none = std::get_if<NoSolution>(&outcome)) {
      if (none->violation.kind == StructureViolationKind::DeepSubtree) saw_deep_ = true;
      if (none->violation.kind == StructureViolationKind::HasCycle) saw_cycle_ = true;
      return;
    }
    auto& family = std::get<SolutionFamily>(outcome);
    if (!seen_.insert(signature_of(family, labeled)).second) return;
    std::uint64_t id = labeled.assignment_id;
    result.families.push_back({id, std::move(labeled), std::move(family)});
  }

  void finish(SolveResult& result) const {
    if (!result.families.empty()) return;
    if (saw_deep_) {
      result.reason = StructureViolationKind::DeepSubtree;
    } else if (saw_cycle_ || result.assignments_examined < result.assignment_count) {
      result.reason = StructureViolationKind::HasCycle;
    } else {
      result.reason = StructureViolationKind::NotConnected;
    }
  }

 private:
  std::set<FamilySignature> seen_;
  bool saw_deep_ = false;
  bool saw_cycle_ = false;
};

LabelingPlan checked_plan(std::shared_ptr<const EddInstance> inst, const SolveLimits& limits) {
  if (!validate_consistency(*inst).ok()) {
    throw Error(ErrorCode::InvalidArgument, "instance fails the consistency check");
  }
  LabelingPlan plan = make_labeling_plan(std::move(inst));
  if (plan.assignment_count > limits.max_assignments) {
    throw Error(ErrorCode::AssignmentCapExceeded,
                "duplicate assignments (" + std::to_string(plan.assignment_count) + ") exceed cap " +
                    std::to_string(limits.max_assignments));
  }
  return plan;
}

// Rank of a bijection among all bijections of its size, lexicographic order.
std::uint64_t lehmer_rank(const std::vector<Index>& perm) {
  const std::size_t m = perm.size();
  std::uint64_t rank = 0;
  for (std::size_t k = 0; k < m; ++k) {
    std::uint64_t smaller = 0;
    for (std::size_t r = k + 1; r < m; ++r) smaller += perm[r] < perm[k] ? 1 : 0;
    rank += smaller * saturating_factorial(m - 1 - k);
  }
  return rank;
}

}  // namespace

std::size_t SolutionFamily::block_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(slots.begin(), slots.end(), [](const Slot& s) { return std::holds_alternative<BlockSlot>(s); }));
}

std::uint64_t SolutionFamily::expansion_count() const noexcept {
  std::uint64_t total = 1;
  for (const auto& slot : slots) {
    if (const auto* block = std::get_if<BlockSlot>(&slot)) {
      total = saturating_mul(total, saturating_factorial(block->elements.size()));
    }
  }
  return total;
}

SolutionFamily dangler_first_search(const DigestGraph& g, const StructureVerdict& verdict,
                                    const LabeledInstance& inst) {
  SolutionFamily family;
  const auto& path = verdict.diameter;
  const std::size_t m = path.size() / 2;  // pieces on the diameter
  auto piece = [&](std::size_t k) { return static_cast<Index>(g.index(path[2 * k - 1])); };
  if (m == 0) return family;
  if (m == 1) {
    family.slots.push_back(FixedSlot{piece(1)});
    family.canonical_orientation = true;
    return family;
  }

  // Danglers of the diameter node at path position 2k, k = 1..m-1.
  std::vector<const DanglerGroup*> hanging(m, nullptr);
  std::size_t next_group = 0;
  for (std::size_t k = 1; k < m && next_group < verdict.danglers.size(); ++k) {
    if (verdict.danglers[next_group].attachment == path[2 * k]) hanging[k] = &verdict.danglers[next_group++];
  }

  const bool absorb_first = hanging[1] != nullptr;
  const bool absorb_last = hanging[m - 1] != nullptr;
  if (!absorb_first) family.slots.push_back(FixedSlot{piece(1)});
  for (std::size_t k = 1; k < m; ++k) {
    if (const auto* group = hanging[k]) {
      BlockSlot block{group->attachment, {}};
      for (const auto& d : group->danglers) block.elements.push_back(static_cast<Index>(g.index(d.piece)));
      // An end piece hangs off its neighbour exactly like a dangler does.
      if (k == 1) block.elements.push_back(piece(1));
      if (k == m - 1) block.elements.push_back(piece(m));
      sort_by_value(block.elements, inst);
      family.slots.push_back(std::move(block));
    }
    if (k + 1 < m || !absorb_last) family.slots.push_back(FixedSlot{piece(k + 1)});
  }
  orient(family, inst);
  return family;
}

Solution induced_permutation(std::span<const Index> piece_order, const LabeledInstance& inst) {
  const std::size_t n = inst.c_elements.size();
  const std::size_t p = inst.base->p();
  const std::size_t q = inst.base->q();
  if (piece_order.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "piece order has the wrong length");
  }
  std::vector<bool> used(n, false);
  std::vector<bool> seen_a(p, false);
  std::vector<bool> seen_b(q, false);
  Solution s;
  s.pi_c.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Index e = piece_order[k];
    if (e >= n || used[e]) throw Error(ErrorCode::InvalidArgument, "piece order is not a permutation");
    used[e] = true;
    const auto& c = inst.c_elements[e];
    s.pi_c.push_back(c);
    if (k == 0 || inst.c_elements[piece_order[k - 1]].a_owner != c.a_owner) {
      if (seen_a[c.a_owner]) {
        throw Error(ErrorCode::NotConsecutive,
                    "pieces of AB_" + std::to_string(c.a_owner + 1) + " are not consecutive");
      }
      seen_a[c.a_owner] = true;
      s.pi_a.push_back(c.a_owner);
    }
    if (k == 0 || inst.c_elements[piece_order[k - 1]].b_owner != c.b_owner) {
      if (seen_b[c.b_owner]) {
        throw Error(ErrorCode::NotConsecutive,
                    "pieces of BA_" + std::to_string(c.b_owner + 1) + " are not consecutive");
      }
      seen_b[c.b_owner] = true;
      s.pi_b.push_back(c.b_owner);
    }
  }
  if (s.pi_a.size() != p || s.pi_b.size() != q) {
    throw Error(ErrorCode::InvalidArgument, "some fragment owns no piece");
  }
  return s;
}

LabeledResult solve_labeled(const LabeledInstance& inst) {
  DigestGraph g = build_graph(inst);
  StructureVerdict verdict = check_structure(g);
  if (verdict.violation) return NoSolution{std::move(*verdict.violation)};
  return dangler_first_search(g, verdict, inst);
}

SolveResult solve(std::shared_ptr<const EddInstance> inst, SolveLimits limits) {
  LabelingPlan plan = checked_plan(std::move(inst), limits);
  const EddInstance& base = *plan.base;
  const std::size_t p = base.p();

  SolveResult result;
  result.assignment_count = plan.assignment_count;
  FamilyCollector collector;

  std::vector<bool> in_group(plan.prototype.size(), false);
  for (const auto& group : plan.groups) {
    for (Index e : group.elements) in_group[e] = true;
  }

  UndoableUnionFind uf(p + base.q());
  for (std::size_t e = 0; e < plan.prototype.size(); ++e) {
    if (in_group[e]) continue;
    Index a = plan.prototype[e].a_owner;
    Index b = static_cast<Index>(p + plan.prototype[e].b_owner);
    if (uf.connected(a, b)) {
      result.reason = StructureViolationKind::HasCycle;
      return result;
    }
    uf.unite(a, b);
  }

  // One search position per duplicate copy, group by group.
  struct Position {
    std::size_t group;
    std::size_t copy;
  };
  std::vector<Position> positions;
  for (std::size_t g = 0; g < plan.groups.size(); ++g) {
    for (std::size_t k = 0; k < plan.groups[g].elements.size(); ++k) positions.push_back({g, k});
  }

  // Single-piece fragments with the same value are interchangeable; only the
  // assignment that gives them partners in increasing order is explored.
  std::vector<std::vector<bool>> a_single(plan.groups.size());
  std::vector<std::vector<bool>> b_single(plan.groups.size());
  std::vector<std::vector<Index>> matching(plan.groups.size());
  std::vector<std::vector<bool>> used(plan.groups.size());
  std::vector<std::uint64_t> radix(plan.groups.size(), 1);
  for (std::size_t g = plan.groups.size(); g-- > 0;) {
    const auto& group = plan.groups[g];
    const std::size_t m = group.elements.size();
    for (Index e : group.elements) a_single[g].push_back(base.ab_sets[plan.prototype[e].a_owner].size() == 1);
    for (Index b : group.b_owners) b_single[g].push_back(base.ba_sets[b].size() == 1);
    matching[g].assign(m, 0);
    used[g].assign(m, false);
    if (g + 1 < plan.groups.size()) {
      radix[g] = saturating_mul(radix[g + 1], saturating_factorial(plan.groups[g + 1].elements.size()));
    }
  }

  auto candidate_ok = [&](const Position& pos, Index s) {
    const auto& group = plan.groups[pos.group];
    if (used[pos.group][s]) return false;
    if (b_single[pos.group][s]) {
      for (Index r = 0; r < s; ++r) {
        if (b_single[pos.group][r] && !used[pos.group][r]) return false;
      }
    }
    if (a_single[pos.group][pos.copy]) {
      for (std::size_t k = pos.copy; k-- > 0;) {
        if (a_single[pos.group][k]) {
          if (matching[pos.group][k] > s) return false;
          break;
        }
      }
    }
    Index a = plan.prototype[group.elements[pos.copy]].a_owner;
    Index b = static_cast<Index>(p + group.b_owners[s]);
    return !uf.connected(a, b);
  };

  auto emit_leaf = [&] {
    LabeledInstance labeled;
    labeled.base = plan.base;
    labeled.c_elements = plan.prototype;
    std::uint64_t id = 0;
    for (std::size_t g = 0; g < plan.groups.size(); ++g) {
      const auto& group = plan.groups[g];
      for (std::size_t k = 0; k < group.elements.size(); ++k) {
        labeled.c_elements[group.elements[k]].b_owner = group.b_owners[matching[g][k]];
      }
      id += lehmer_rank(matching[g]) * radix[g];
    }
    labeled.assignment_id = id;
    collector.offer(std::move(labeled), result);
  };

  constexpr Index kNone = std::numeric_limits<Index>::max();
  std::vector<Index> choice(positions.size() + 1, kNone);
  std::size_t depth = 0;
  for (;;) {
    if (depth == positions.size()) {
      emit_leaf();
      if (depth == 0) break;
      --depth;
      const auto& pos = positions[depth];
      used[pos.group][choice[depth]] = false;
      uf.undo();
      continue;
    }
    const auto& pos = positions[depth];
    const Index m = static_cast<Index>(plan.groups[pos.group].elements.size());
    Index s = choice[depth] == kNone ? 0 : choice[depth] + 1;
    while (s < m && !candidate_ok(pos, s)) ++s;
    if (s < m) {
      choice[depth] = s;
      matching[pos.group][pos.copy] = s;
      used[pos.group][s] = true;
      Index a = plan.prototype[plan.groups[pos.group].elements[pos.copy]].a_owner;
      uf.unite(a, static_cast<Index>(p + plan.groups[pos.group].b_owners[s]));
      ++depth;
      choice[depth] = kNone;
      continue;
    }
    choice[depth] = kNone;
    if (depth == 0) break;
    --depth;
    const auto& prev = positions[depth];
    used[prev.group][choice[depth]] = false;
    uf.undo();
  }

  collector.finish(result);
  return result;
}

SolveResult solve(const EddInstance& inst, SolveLimits limits) {
  return solve(std::make_shared<const EddInstance>(inst), limits);
}

SolveResult solve_by_enumeration(std::shared_ptr<const EddInstance> inst, SolveLimits limits) {
  LabelingPlan plan = checked_plan(std::move(inst), limits);
  SolveResult result;
  result.assignment_count = plan.assignment_count;
  FamilyCollector collector;
  DuplicateAssignments assignments(std::move(plan));
  while (auto labeled = assignments.next()) collector.offer(std::move(*labeled), result);
  collector.finish(result);
  return result;
}

namespace {

// Appends the family's solutions not already in seen; stops once out holds cap.
void expand_into(const SolutionFamily& family, const LabeledInstance& inst, std::uint64_t cap,
                 std::set<SolutionKey>& seen, Expansion& out) {
  std::vector<std::vector<Index>> blocks;
  for (const auto& slot : family.slots) {
    if (const auto* block = std::get_if<BlockSlot>(&slot)) {
      blocks.push_back(block->elements);
      sort_by_value(blocks.back(), inst);
    }
  }
  auto by_value = [&](Index x, Index y) { return value_of(inst, x) < value_of(inst, y); };

  for (;;) {
    auto order = expansion_order(family.slots, blocks);
    Solution s = canonical_orientation(induced_permutation(order, inst), *inst.base);
    auto key = value_key(s, *inst.base);
    if (!seen.count(key)) {
      if (out.solutions.size() >= cap) {
        out.truncated = true;
        return;
      }
      seen.insert(std::move(key));
      out.solutions.push_back(std::move(s));
      out.assignment_ids.push_back(inst.assignment_id);
    }
    // Odometer over the blocks, last block fastest.
    std::size_t b = blocks.size();
    bool advanced = false;
    while (b-- > 0) {
      if (std::next_permutation(blocks[b].begin(), blocks[b].end(), by_value)) {
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

}  // namespace

Expansion expand_family(const SolutionFamily& family, const LabeledInstance& inst, std::uint64_t cap) {
  Expansion out;
  std::set<SolutionKey> seen;
  expand_into(family, inst, cap, seen, out);
  return out;
}

Expansion collect_solutions(const SolveResult& result, std::uint64_t cap) {
  Expansion out;
  std::set<SolutionKey> seen;
  for (const auto& found : result.families) {
    expand_into(found.family, found.labeled, cap, seen, out);
    if (out.truncated) break;
  }
  return out;
}

std::string format_family(const SolutionFamily& family, const LabeledInstance& inst) {
  std::ostringstream os;
  bool first = true;
  for (const auto& slot : family.slots) {
    if (!first) os << ' ';
    first = false;
    if (const auto* fixed = std::get_if<FixedSlot>(&slot)) {
      os << value_of(inst, fixed->element);
    } else {
      const auto& block = std::get<BlockSlot>(slot);
      os << '[';
      for (std::size_t k = 0; k < block.elements.size(); ++k) {
        os << (k ? " " : "") << value_of(inst, block.elements[k]);
      }
      os << ']';
    }
  }
  return os.str();
}

}  // namespace edd
