#include <benchmark/benchmark.h>

#include <memory>

#include "edd/digest_graph.hpp"
#include "edd/generator.hpp"
#include "edd/reduction.hpp"
#include "edd/solver.hpp"
#include "edd/verifier.hpp"

namespace {

using namespace edd;

void BM_SolveDistinct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto inst = std::make_shared<const EddInstance>(random_distinct_instance(7, n / 2, n - n / 2 + 1).instance);
  for (auto _ : state) {
    SolveResult result = solve(inst);
    Expansion expansion = collect_solutions(result, 1);
    benchmark::DoNotOptimize(expansion.solutions.data());
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(inst->c_count()));
}
BENCHMARK(BM_SolveDistinct)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oN);

void BM_StructureCheck(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto inst = std::make_shared<const EddInstance>(random_distinct_instance(11, n / 2, n - n / 2 + 1).instance);
  LabeledInstance labeled = *label_duplicates(inst, 1).next();
  DigestGraph g = build_graph(labeled);
  for (auto _ : state) benchmark::DoNotOptimize(check_structure(g).diameter.size());
  state.SetComplexityN(static_cast<benchmark::IterationCount>(inst->c_count()));
}
BENCHMARK(BM_StructureCheck)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oN);

void BM_VerifyPermutation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  GeneratedInstance gen = random_distinct_instance(13, n / 2, n - n / 2 + 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_permutation(gen.instance, gen.truth.pi_a, gen.truth.pi_b).valid);
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(gen.instance.c_count()));
}
BENCHMARK(BM_VerifyPermutation)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNLogN);

// Repeated pieces: a short sequence forces many equal gaps.
void BM_SolveWithDuplicates(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  auto inst = std::make_shared<const EddInstance>(random_instance(5, p, p, 3 * p).instance);
  for (auto _ : state) {
    SolveResult result = solve(inst, SolveLimits{~std::uint64_t{0}, 1});
    benchmark::DoNotOptimize(result.families.size());
  }
  state.counters["assignments"] = static_cast<double>(make_labeling_plan(inst).assignment_count);
}
BENCHMARK(BM_SolveWithDuplicates)->DenseRange(3, 7, 1)->Unit(benchmark::kMicrosecond);

void BM_BruteForceOracle(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  EddInstance inst = random_distinct_instance(3, p, p).instance;
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_solve(inst).size());
}
BENCHMARK(BM_BruteForceOracle)->DenseRange(2, 5, 1)->Unit(benchmark::kMillisecond);

void BM_SolveReducedGraph(benchmark::State& state) {
  const auto nodes = static_cast<std::size_t>(state.range(0));
  SimpleGraph path(nodes);
  for (std::size_t v = 1; v < nodes; ++v) path.add_edge(v, v + 1);
  EddInstance inst = reduce(path).instance;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(inst, SolveLimits{~std::uint64_t{0}, 1}).families.size());
  }
}
BENCHMARK(BM_SolveReducedGraph)->DenseRange(2, 6, 1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
