#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "edd/error.hpp"
#include "edd/generator.hpp"
#include "edd/solver.hpp"
#include "edd/verifier.hpp"
#include "support.hpp"

namespace edd {
namespace {

LabeledInstance only_labeling(const EddInstance& inst) {
  return *label_duplicates(std::make_shared<const EddInstance>(inst), 1).next();
}

std::vector<LabeledInstance> all_labelings(const EddInstance& inst) {
  std::vector<LabeledInstance> out;
  auto assignments = label_duplicates(std::make_shared<const EddInstance>(inst), 100'000);
  while (auto labeled = assignments.next()) out.push_back(std::move(*labeled));
  return out;
}

// Piece indices for a value sequence on a duplicate-free labeling.
std::vector<Index> order_of(const LabeledInstance& inst, const std::vector<Length>& values) {
  std::vector<Index> out;
  for (Length v : values) {
    for (Index k = 0; k < inst.c_elements.size(); ++k) {
      if (inst.c_elements[k].value == v) out.push_back(k);
    }
  }
  return out;
}

std::vector<Length> a_values(const Solution& s, const EddInstance& inst) {
  std::vector<Length> out;
  for (Index i : s.pi_a) out.push_back(inst.a_lengths[i]);
  return out;
}

std::vector<Length> b_values(const Solution& s, const EddInstance& inst) {
  std::vector<Length> out;
  for (Index j : s.pi_b) out.push_back(inst.b_lengths[j]);
  return out;
}

std::set<SolutionKey> keys(const std::vector<Solution>& solutions, const EddInstance& inst) {
  std::set<SolutionKey> out;
  for (const auto& s : solutions) out.insert(value_key(s, inst));
  return out;
}

std::vector<std::size_t> block_sizes(const SolutionFamily& family) {
  std::vector<std::size_t> out;
  for (const auto& slot : family.slots) {
    if (const auto* block = std::get_if<BlockSlot>(&slot)) out.push_back(block->elements.size());
  }
  return out;
}

// Each AB_i and each BA_j must form one consecutive run of the piece order.
void expect_consecutive_runs(const Solution& s) {
  auto check = [&](auto owner_of) {
    std::set<Index> closed;
    for (std::size_t k = 0; k < s.pi_c.size(); ++k) {
      Index owner = owner_of(s.pi_c[k]);
      EXPECT_FALSE(closed.count(owner)) << "owner " << owner << " split";
      if (k + 1 == s.pi_c.size() || owner_of(s.pi_c[k + 1]) != owner) closed.insert(owner);
    }
  };
  check([](const LabeledLength& c) { return c.a_owner; });
  check([](const LabeledLength& c) { return c.b_owner; });
}

TEST(DanglerFirstSearch, ExampleFamily) {
  LabeledInstance inst = only_labeling(testing::figure1_instance());
  DigestGraph g = build_graph(inst);
  SolutionFamily family = dangler_first_search(g, check_structure(g), inst);
  EXPECT_EQ(format_family(family, inst), "6 3 [12 15] 8 29 17");
  ASSERT_EQ(family.slots.size(), 6u);
  EXPECT_EQ(family.block_count(), 1u);
  EXPECT_EQ(family.expansion_count(), 2u);
  const auto& block = std::get<BlockSlot>(family.slots[2]);
  EXPECT_EQ(node_name(g, inst, block.attachment), "B2");
}

TEST(DanglerFirstSearch, SingleFragmentIsOneFixedSlot) {
  LabeledInstance inst = only_labeling(testing::single_instance());
  DigestGraph g = build_graph(inst);
  SolutionFamily family = dangler_first_search(g, check_structure(g), inst);
  ASSERT_EQ(family.slots.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<FixedSlot>(family.slots[0]));
  EXPECT_EQ(family.expansion_count(), 1u);
  EXPECT_EQ(format_family(family, inst), "5");
}

// Of the two labelings of the repeated 7, only the one putting the 7 of AB_1
// into BA_3 gives a tree. The notation is reported in canonical orientation,
// so the end blocks may appear in either order.
TEST(DanglerFirstSearch, DuplicateExampleTreeLabeling) {
  const EddInstance base = testing::duplicates_instance();
  auto oracle = keys(brute_force_solve(base), base);
  std::size_t trees = 0;
  for (const auto& labeled : all_labelings(base)) {
    LabeledResult result = solve_labeled(labeled);
    if (const auto* none = std::get_if<NoSolution>(&result)) {
      EXPECT_EQ(none->violation.kind, StructureViolationKind::HasCycle);
      continue;
    }
    ++trees;
    const auto& family = std::get<SolutionFamily>(result);
    std::string notation = format_family(family, labeled);
    EXPECT_TRUE(notation == "[5 7] 6 7 [4 8]" || notation == "[4 8] 7 6 [5 7]") << notation;
    auto expansion = expand_family(family, labeled, 100);
    EXPECT_FALSE(expansion.truncated);
    EXPECT_EQ(keys(expansion.solutions, base), oracle);
    for (const auto& s : expansion.solutions) EXPECT_TRUE(verify_permutation(base, s.pi_a, s.pi_b));
  }
  EXPECT_EQ(trees, 1u);
}

TEST(InducedPermutation, ExampleOrders) {
  const EddInstance base = testing::figure1_instance();
  LabeledInstance inst = only_labeling(base);
  auto order = order_of(inst, {6, 3, 12, 15, 8, 29, 17});
  Solution s = induced_permutation(order, inst);
  EXPECT_EQ(a_values(s, base), (std::vector<Length>{9, 12, 15, 37, 17}));
  EXPECT_EQ(b_values(s, base), (std::vector<Length>{6, 38, 46}));

  Solution swapped = induced_permutation(order_of(inst, {6, 3, 15, 12, 8, 29, 17}), inst);
  EXPECT_EQ(a_values(swapped, base), (std::vector<Length>{9, 15, 12, 37, 17}));
  EXPECT_EQ(b_values(swapped, base), (std::vector<Length>{6, 38, 46}));
}

TEST(InducedPermutation, SingleFragment) {
  LabeledInstance inst = only_labeling(testing::single_instance());
  std::vector<Index> order{0};
  Solution s = induced_permutation(order, inst);
  EXPECT_EQ(s.pi_a, (std::vector<Index>{0}));
  EXPECT_EQ(s.pi_b, (std::vector<Index>{0}));
}

TEST(InducedPermutation, SplitOwnerIsRejected) {
  LabeledInstance inst = only_labeling(testing::figure1_instance());
  auto order = order_of(inst, {6, 12, 3, 15, 8, 29, 17});
  try {
    induced_permutation(order, inst);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotConsecutive);
  }
}

TEST(SolveLabeled, NoDanglersMeansOneExpansion) {
  // Cuts alternate between the enzymes, so every piece lies on the diameter.
  auto gen = instance_from_cuts(CutModel{42, {3, 12, 25}, {7, 18, 33}});
  LabeledInstance inst = only_labeling(gen.instance);
  auto result = solve_labeled(inst);
  ASSERT_TRUE(std::holds_alternative<SolutionFamily>(result));
  const auto& family = std::get<SolutionFamily>(result);
  EXPECT_EQ(family.block_count(), 0u);
  auto expansion = expand_family(family, inst, 10);
  ASSERT_EQ(expansion.solutions.size(), 1u);
  EXPECT_EQ(brute_force_solve(gen.instance).size(), 1u);
  EXPECT_EQ(keys(expansion.solutions, gen.instance), keys(brute_force_solve(gen.instance), gen.instance));
}

TEST(Solve, ExampleHasOneFamilyWithTwoSolutions) {
  const EddInstance base = testing::figure1_instance();
  SolveResult result = solve(base);
  EXPECT_EQ(result.assignment_count, 1u);
  ASSERT_EQ(result.families.size(), 1u);
  EXPECT_EQ(format_family(result.families[0].family, result.families[0].labeled), "6 3 [12 15] 8 29 17");
  auto expansion = collect_solutions(result, 10);
  ASSERT_EQ(expansion.solutions.size(), 2u);
  EXPECT_FALSE(expansion.truncated);
  EXPECT_EQ(a_values(expansion.solutions[0], base), (std::vector<Length>{9, 12, 15, 37, 17}));
  EXPECT_EQ(a_values(expansion.solutions[1], base), (std::vector<Length>{9, 15, 12, 37, 17}));
  for (const auto& s : expansion.solutions) {
    EXPECT_EQ(b_values(s, base), (std::vector<Length>{6, 38, 46}));
    EXPECT_TRUE(verify_permutation(base, s.pi_a, s.pi_b));
  }
  EXPECT_EQ(keys(expansion.solutions, base), keys(brute_force_solve(base), base));
}

TEST(Solve, DuplicateExampleHasExactlyOneGoodAssignment) {
  const EddInstance base = testing::duplicates_instance();
  SolveResult result = solve(base);
  EXPECT_EQ(result.assignment_count, 2u);
  ASSERT_EQ(result.families.size(), 1u);
  // The succeeding labeling puts the 7 of AB_1 into BA_3 (B index 2).
  for (const auto& c : result.families[0].labeled.c_elements) {
    if (c.value == 7 && c.a_owner == 0) EXPECT_EQ(c.b_owner, 2u);
  }
  auto expansion = collect_solutions(result, 100);
  EXPECT_EQ(keys(expansion.solutions, base), keys(brute_force_solve(base), base));
}

TEST(Solve, InconsistentInstanceIsRejected) {
  EddInstance inst = testing::figure1_instance();
  inst.ab_sets[0] = {3, 7};
  EXPECT_THROW(solve(inst), Error);
}

TEST(Solve, AssignmentCapIsEnforced) {
  auto gen = instance_from_cuts(CutModel{22, {2, 7, 13}, {5, 10}});
  try {
    solve(gen.instance, SolveLimits{11, 100});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AssignmentCapExceeded);
  }
  EXPECT_TRUE(solve(gen.instance, SolveLimits{12, 100}).solved());
}

TEST(Solve, PrunedSearchMatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto gen = random_instance(seed, 2 + seed % 4, 2 + (seed / 4) % 3, 8 + seed % 12);
    auto inst = std::make_shared<const EddInstance>(gen.instance);
    SolveResult pruned = solve(inst);
    SolveResult plain = solve_by_enumeration(inst);
    EXPECT_EQ(pruned.solved(), plain.solved()) << "seed " << seed;
    EXPECT_EQ(pruned.assignment_count, plain.assignment_count);
    EXPECT_EQ(keys(collect_solutions(pruned, 100'000).solutions, *inst),
              keys(collect_solutions(plain, 100'000).solutions, *inst))
        << "seed " << seed;
    ASSERT_TRUE(pruned.solved()) << "ground truth exists for seed " << seed;
  }
}

TEST(Solve, AgreesWithOracleAndGroundTruth) {
  for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
    auto gen = random_instance(seed, 1 + seed % 4, 1 + (seed / 3) % 4, 6 + seed % 15);
    const auto& inst = gen.instance;
    SolveResult result = solve(inst);
    auto expansion = collect_solutions(result, 100'000);
    ASSERT_FALSE(expansion.truncated);
    auto ours = keys(expansion.solutions, inst);
    EXPECT_EQ(ours, keys(brute_force_solve(inst), inst)) << "seed " << seed;
    EXPECT_TRUE(ours.count(value_key(canonical_orientation(gen.truth, inst), inst))) << "seed " << seed;
    for (const auto& s : expansion.solutions) {
      EXPECT_TRUE(verify_permutation(inst, s.pi_a, s.pi_b)) << "seed " << seed;
      expect_consecutive_runs(s);
    }
  }
}

TEST(Solve, UnsolvableInstanceGivesNoFamilies) {
  // Moving the 8 from BA_2 to BA_3 and the 17 the other way keeps every
  // identity intact but no layout exists.
  EddInstance inst = testing::figure1_instance();
  inst.ba_sets[1] = {3, 12, 15, 17};
  inst.ba_sets[2] = {8, 29};
  inst.b_lengths[1] = 47;
  inst.b_lengths[2] = 37;
  ASSERT_TRUE(validate_consistency(inst).ok());
  ASSERT_TRUE(brute_force_solve(inst).empty());
  SolveResult result = solve(inst);
  EXPECT_FALSE(result.solved());
  ASSERT_TRUE(result.reason.has_value());
  EXPECT_TRUE(collect_solutions(result, 10).solutions.empty());
}

TEST(ExpandFamily, CapTruncates) {
  SolveResult result = solve(testing::figure1_instance());
  const auto& found = result.families[0];
  EXPECT_EQ(expand_family(found.family, found.labeled, 10).solutions.size(), 2u);
  auto one = expand_family(found.family, found.labeled, 1);
  EXPECT_EQ(one.solutions.size(), 1u);
  EXPECT_TRUE(one.truncated);
}

TEST(ExpandFamily, BlocksOfTwoAndThreeGiveTwelve) {
  // Two A fragments sit inside one B fragment and three B fragments inside
  // one A fragment; all ten pieces have distinct lengths.
  auto gen = instance_from_cuts(CutModel{78, {8, 12, 18, 65}, {5, 30, 37, 46, 57}});
  const auto& inst = gen.instance;
  SolveResult result = solve(inst);
  ASSERT_EQ(result.families.size(), 1u);
  const auto& found = result.families[0];
  auto sizes = block_sizes(found.family);
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(found.family.expansion_count(), 12u);
  auto expansion = expand_family(found.family, found.labeled, 100);
  EXPECT_EQ(expansion.solutions.size(), 12u);
  auto oracle = brute_force_solve(inst);
  EXPECT_EQ(oracle.size(), 12u);
  EXPECT_EQ(keys(expansion.solutions, inst), keys(oracle, inst));
}

}  // namespace
}  // namespace edd
