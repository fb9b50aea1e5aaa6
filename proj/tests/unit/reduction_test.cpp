#include <gtest/gtest.h>

#include <set>

#include "edd/error.hpp"
#include "edd/reduction.hpp"
#include "edd/solver.hpp"
#include "edd/verifier.hpp"
#include "support.hpp"

namespace edd {
namespace {

using EdgeSet = std::set<std::pair<std::size_t, std::size_t>>;

SimpleGraph graph(std::size_t n, const EdgeSet& edges) {
  SimpleGraph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

TEST(GraphFormat, ParsesAndSerializes) {
  SimpleGraph g = parse_graph("# a path\nGRAPH 3\n1 2\n3 2  # reversed\n");
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edges(), (EdgeSet{{1, 2}, {2, 3}}));
  EXPECT_EQ(serialize_graph(g), "GRAPH 3\n1 2\n2 3\n");
  EXPECT_EQ(parse_graph(serialize_graph(g)).edges(), g.edges());
}

TEST(GraphFormat, RejectsBadInput) {
  EXPECT_THROW(parse_graph("1 2\n"), ParseError);
  EXPECT_THROW(parse_graph("GRAPH 2\n1 3\n"), ParseError);
  EXPECT_THROW(parse_graph("GRAPH 2\n1 1\n"), ParseError);
  EXPECT_THROW(parse_graph("GRAPH 2\n1 2\n2 1\n"), ParseError);
  EXPECT_THROW(parse_graph("GRAPH 2\n1 x\n"), ParseError);
  EXPECT_THROW(parse_graph(""), ParseError);
}

TEST(Augment, SingleNode) {
  AugmentedGraph aug = augment(graph(1, {}));
  EXPECT_EQ(aug.ell, 3u);
  EXPECT_EQ(aug.t, 2u);
  EXPECT_EQ(aug.z, 3u);
  EXPECT_EQ(aug.graph.edges(), (EdgeSet{{1, 2}, {2, 3}}));
}

TEST(Augment, SingleEdge) {
  AugmentedGraph aug = augment(graph(2, {{1, 2}}));
  EXPECT_EQ(aug.ell, 4u);
  EXPECT_EQ(aug.graph.edges(), (EdgeSet{{1, 2}, {1, 3}, {2, 3}, {3, 4}}));
}

TEST(Augment, TriangleKappa) {
  AugmentedGraph aug = augment(graph(3, {{1, 2}, {2, 3}, {1, 3}}));
  EXPECT_EQ(aug.ell, 5u);
  EXPECT_EQ(aug.kappa(aug.t), 4u);
  EXPECT_EQ(aug.kappa(1), 3u);
  EXPECT_EQ(aug.kappa(aug.z), 1u);
}

TEST(Reduce, SingleEdgeArithmetic) {
  Reduction r = reduce(graph(2, {{1, 2}}));
  const EddInstance& inst = r.instance;
  // Primes are v + 4: 1' = 5, 2' = 6, t' = 7.
  EXPECT_EQ(inst.a_lengths, (std::vector<Length>{14, 14, 14, 7}));
  EXPECT_EQ(inst.ab_sets[0], (std::vector<Length>{1, 6, 7}));
  EXPECT_EQ(inst.ab_sets[1], (std::vector<Length>{2, 5, 7}));
  EXPECT_EQ(inst.ab_sets[2], (std::vector<Length>{3, 5, 6}));
  EXPECT_EQ(inst.ab_sets[3], (std::vector<Length>{7}));
  // b_1 = 1 + 5 and one extra 5 (kappa 2); likewise for 2; t has kappa 3.
  EXPECT_EQ(inst.b_lengths, (std::vector<Length>{6, 5, 8, 6, 10, 7, 7}));
  EXPECT_EQ(inst.c_count(), 10u);
  EXPECT_TRUE(validate_consistency(inst).ok());
  EXPECT_EQ(r.a_node, (std::vector<std::size_t>{1, 2, 3, 4}));
  ASSERT_EQ(r.b_origin.size(), 7u);
  EXPECT_EQ(r.b_origin[5].node, 3u);
  EXPECT_EQ(r.b_origin[5].copy, 1u);
  auto comments = r.sidecar_comments();
  EXPECT_NE(std::find(comments.begin(), comments.end(), "node A3 = t"), comments.end());
  EXPECT_NE(std::find(comments.begin(), comments.end(), "node B2 = 1(1)"), comments.end());
}

TEST(Reduce, SingleNodeArithmetic) {
  Reduction r = reduce(graph(1, {}));
  // t = 2, z = 3, primes + 3: 1' = 4, t' = 5.
  EXPECT_EQ(r.instance.a_lengths, (std::vector<Length>{1 + 5, 2 + 4, 5}));
  EXPECT_TRUE(validate_consistency(r.instance).ok());
}

TEST(Reduce, AlwaysConsistent) {
  for (const auto& h : testing::connected_graphs_up_to_iso(4)) {
    Reduction r = reduce(h);
    EXPECT_TRUE(validate_consistency(r.instance).ok());
    EXPECT_EQ(r.instance.c_count(), r.instance.p() + r.instance.q() - 1);
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) EXPECT_TRUE(validate_consistency(reduce(testing::random_graph(seed, 6)).instance).ok());
}

std::vector<std::vector<std::size_t>> paths_from_solve(const SimpleGraph& h) {
  Reduction r = reduce(h);
  SolveResult result = solve(r.instance, SolveLimits{std::uint64_t(-1), 10'000});
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : collect_solutions(result, 10'000).solutions) {
    EXPECT_TRUE(verify_permutation(r.instance, s.pi_a, s.pi_b));
    out.push_back(extract_path(s, h));
  }
  return out;
}

TEST(ExtractPath, SingleEdge) {
  SimpleGraph h = graph(2, {{1, 2}});
  auto paths = paths_from_solve(h);
  ASSERT_FALSE(paths.empty());
  for (const auto& p : paths) EXPECT_TRUE(p == (std::vector<std::size_t>{1, 2}) || p == (std::vector<std::size_t>{2, 1}));

  // The oracle on the same reduced instance agrees.
  Reduction r = reduce(h);
  auto oracle = brute_force_solve(r.instance);
  ASSERT_FALSE(oracle.empty());
  for (const auto& s : oracle) EXPECT_TRUE(is_hamiltonian_path(h, extract_path(s, h)));
}

TEST(ExtractPath, SingleNode) {
  auto paths = paths_from_solve(graph(1, {}));
  ASSERT_FALSE(paths.empty());
  EXPECT_EQ(paths[0], (std::vector<std::size_t>{1}));
}

TEST(ExtractPath, Triangle) {
  SimpleGraph h = graph(3, {{1, 2}, {2, 3}, {1, 3}});
  auto paths = paths_from_solve(h);
  ASSERT_FALSE(paths.empty());
  for (const auto& p : paths) EXPECT_TRUE(is_hamiltonian_path(h, p));
}

TEST(ExtractPath, NonAdjacentOrderIsMalformed) {
  SimpleGraph h = graph(3, {{1, 2}, {2, 3}});
  Solution s;
  s.pi_a = {0, 2, 1, 3, 4};  // nodes 1 3 2 t z: 1 and 3 are not adjacent
  try {
    extract_path(s, h);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedSolution);
  }
  s.pi_a = {0, 1};
  EXPECT_THROW(extract_path(s, h), Error);
}

TEST(HamiltonianPath, SmallCases) {
  EXPECT_TRUE(has_hamiltonian_path(graph(3, {{1, 2}, {2, 3}})));
  EXPECT_FALSE(has_hamiltonian_path(graph(4, {{1, 2}, {1, 3}, {1, 4}})));
  EXPECT_TRUE(has_hamiltonian_path(graph(1, {})));
  EXPECT_FALSE(has_hamiltonian_path(graph(2, {})));
  EXPECT_THROW(has_hamiltonian_path(SimpleGraph(11)), Error);
}

TEST(HamiltonianPath, ReductionAgreesOnSmallGraphs) {
  auto graphs = testing::connected_graphs_up_to_iso(4);
  ASSERT_EQ(graphs.size(), 10u);
  for (const auto& h : graphs) {
    auto paths = paths_from_solve(h);
    EXPECT_EQ(!paths.empty(), has_hamiltonian_path(h)) << serialize_graph(h);
    for (const auto& p : paths) EXPECT_TRUE(is_hamiltonian_path(h, p)) << serialize_graph(h);
  }
}

}  // namespace
}  // namespace edd
