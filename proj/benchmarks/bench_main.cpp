// Micro-benchmarks for the planner hot paths: broadcast strategy
// computation in both search modes, the two stream DP formulations, the
// all-roots multicast rerooting, and bottleneck path queries.
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "cdplan/bottleneck.hpp"
#include "cdplan/freq_multicast.hpp"
#include "cdplan/generators.hpp"
#include "cdplan/model.hpp"
#include "cdplan/reorder.hpp"
#include "cdplan/stream_sched.hpp"
#include "cdplan/tree_broadcast.hpp"

using namespace cdplan;

namespace {

void BM_BroadcastSolve(benchmark::State& state) {
  std::mt19937 rng(1);
  const RootedTree tree = gen::random_tree(static_cast<int>(state.range(0)), rng);
  const auto mode = state.range(1) == 0 ? tree_broadcast::SearchMode::Linear
                                        : tree_broadcast::SearchMode::Binary;
  for (auto _ : state)
    benchmark::DoNotOptimize(tree_broadcast::solve(tree, mode).t_opt);
}
BENCHMARK(BM_BroadcastSolve)
    ->ArgsProduct({{32, 128, 512}, {0, 1}})
    ->ArgNames({"n", "binary"});

void BM_StreamDp(benchmark::State& state) {
  std::mt19937 rng(2);
  const StreamSystem sys = gen::random_stream_system(
      3, static_cast<int>(state.range(0)), 7, 2, rng);
  const bool history = state.range(1) == 1;
  for (auto _ : state) {
    const auto r = history ? stream_sched::dp_history(sys)
                           : stream_sched::dp_waits(sys);
    benchmark::DoNotOptimize(r.makespan);
  }
}
BENCHMARK(BM_StreamDp)
    ->ArgsProduct({{50, 100, 200}, {0, 1}})
    ->ArgNames({"m", "history"});

void BM_MulticastAllRoots(benchmark::State& state) {
  std::mt19937 rng(3);
  const FreqInstance inst =
      gen::random_freq(static_cast<int>(state.range(0)), 3, false, 3, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(freq_multicast::solve_all_roots(inst).ops);
}
BENCHMARK(BM_MulticastAllRoots)->Arg(100)->Arg(400)->Arg(1600)->ArgName("n");

void BM_ReorderSolve(benchmark::State& state) {
  std::mt19937 rng(4);
  const ReorderInstance inst = gen::random_reorder(
      static_cast<int>(state.range(0)), Aggregation::Sum, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(reorder::solve(inst).cost);
}
BENCHMARK(BM_ReorderSolve)->Arg(64)->Arg(256)->Arg(1024)->ArgName("n");

void BM_BottleneckPath(benchmark::State& state) {
  std::mt19937 rng(5);
  const int n = static_cast<int>(state.range(0));
  Digraph g = gen::random_digraph(n, 8 * n, rng);
  gen::add_caps(g, 1000, rng);
  gen::add_durations(g, 10, rng);
  for (auto _ : state) {
    const auto r = bottleneck::max_capacity_path(g, 0, n - 1, 5.0 * n);
    benchmark::DoNotOptimize(r.has_value());
  }
}
BENCHMARK(BM_BottleneckPath)->Arg(64)->Arg(256)->Arg(1024)->ArgName("n");

}  // namespace

BENCHMARK_MAIN();
