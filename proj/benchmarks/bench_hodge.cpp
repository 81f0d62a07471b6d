#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "hodgerank/hodge.hpp"

namespace {

using namespace hodgerank;

void BM_GlobalRank(benchmark::State& state) {
  const auto g = bench::random_graph(static_cast<std::size_t>(state.range(0)), 0.2, 3);
  const auto y = bench::random_flow(g, 4);
  const auto ip = InnerProducts::from_graph(g);
  for (auto _ : state) {
    GlobalRanking r = global_rank(y, g, ip);
    benchmark::DoNotOptimize(r.scores.values.data());
  }
  state.SetComplexityN(static_cast<int64_t>(g.edge_count()));
}
BENCHMARK(BM_GlobalRank)->RangeMultiplier(4)->Range(64, 4096)->Complexity()->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
  const auto g = bench::random_graph(static_cast<std::size_t>(state.range(0)), 0.3, 5);
  const auto c = triangles(g);
  const auto y = bench::random_flow(g, 6);
  const auto ip = InnerProducts::from_graph(g);
  for (auto _ : state) {
    HodgeReport r = decompose(y, c, ip);
    benchmark::DoNotOptimize(r.norms.harmonic);
  }
  state.counters["triangles"] = static_cast<double>(c.triangle_count());
}
BENCHMARK(BM_Decompose)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
