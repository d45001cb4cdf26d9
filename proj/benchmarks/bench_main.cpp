// Micro-benchmarks for the chordal extension, the merge strategies and the
// PSD projection.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cliquemerge/chordal.hpp"
#include "cliquemerge/calibration.hpp"
#include "cliquemerge/clique_tree.hpp"
#include "cliquemerge/pipeline.hpp"
#include "cliquemerge/projection.hpp"

using namespace cliquemerge;

namespace {

// Banded pattern with random long-range edges, close to typical SDP structure.
SparsityGraph banded_random(int n, int band, int extra, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, n);
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) {
    for (int d = 1; d <= band && i + d <= n; ++d) edges.push_back({i, i + d});
  }
  for (int k = 0; k < extra; ++k) {
    const int a = pick(rng);
    const int b = pick(rng);
    if (a != b) edges.push_back({std::min(a, b), std::max(a, b)});
  }
  return SparsityGraph(n, std::move(edges));
}

CliqueTree initial_tree(int n) {
  const auto ext = chordal_extension(banded_random(n, 3, n / 10, 7), OrderingHeuristic::kMinimumDegree);
  return build_clique_tree(maximal_cliques(ext.graph, ext.ordering));
}

void BM_ChordalExtension(benchmark::State& state, OrderingHeuristic h) {
  const int n = static_cast<int>(state.range(0));
  const auto g = banded_random(n, 3, n / 10, 7);
  for (auto _ : state) benchmark::DoNotOptimize(chordal_extension(g, h));
}
BENCHMARK_CAPTURE(BM_ChordalExtension, mindeg, OrderingHeuristic::kMinimumDegree)->Arg(200)->Arg(1000);
BENCHMARK_CAPTURE(BM_ChordalExtension, amd, OrderingHeuristic::kApproximateMinimumDegree)->Arg(200)->Arg(1000);

void BM_Strategy(benchmark::State& state, Strategy s) {
  const auto tree = initial_tree(static_cast<int>(state.range(0)));
  StrategyConfig cfg;
  cfg.strategy = s;
  for (auto _ : state) benchmark::DoNotOptimize(apply_strategy(tree, cfg));
  state.counters["cliques"] = static_cast<double>(tree.size());
}
BENCHMARK_CAPTURE(BM_Strategy, parent_child, Strategy::kParentChild)->Arg(200)->Arg(1000);
BENCHMARK_CAPTURE(BM_Strategy, traversal, Strategy::kTraversal)->Arg(200)->Arg(1000);
BENCHMARK_CAPTURE(BM_Strategy, clique_graph, Strategy::kCliqueGraph)->Arg(200)->Arg(1000);

void BM_PsdProject(benchmark::State& state) {
  const auto m = calibration_matrix(static_cast<int>(state.range(0)), 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(psd_project(m));
}
BENCHMARK(BM_PsdProject)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
