#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "hodgerank/l1.hpp"

namespace {

using namespace hodgerank;

void BM_L1ProjectGradient(benchmark::State& state) {
  const auto g = bench::random_graph(static_cast<std::size_t>(state.range(0)), 0.5, 7);
  const auto y = bench::random_flow(g, 8);
  const auto ip = InnerProducts::from_graph(g);
  for (auto _ : state) {
    LpSolution s = l1_project_gradient(y, g, ip);
    benchmark::DoNotOptimize(s.primal_objective);
  }
}
BENCHMARK(BM_L1ProjectGradient)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_L1DualGradient(benchmark::State& state) {
  const auto g = bench::random_graph(static_cast<std::size_t>(state.range(0)), 0.5, 7);
  const auto y = bench::random_flow(g, 8);
  const auto ip = InnerProducts::from_graph(g);
  for (auto _ : state) {
    LpSolution s = l1_dual_gradient(y, g, ip);
    benchmark::DoNotOptimize(s.dual_objective);
  }
}
BENCHMARK(BM_L1DualGradient)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

}  // namespace
