#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "hodgerank/flows.hpp"

namespace {

using namespace hodgerank;

void BM_Triangles(benchmark::State& state) {
  const auto g = bench::random_graph(static_cast<std::size_t>(state.range(0)), 0.3, 1);
  for (auto _ : state) {
    CliqueComplex c = triangles(g);
    benchmark::DoNotOptimize(c.triangle_count());
  }
  state.counters["edges"] = static_cast<double>(g.edge_count());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Triangles)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_CurlAdjoint(benchmark::State& state) {
  const auto g = bench::random_graph(static_cast<std::size_t>(state.range(0)), 0.3, 2);
  const auto c = triangles(g);
  const auto ip = InnerProducts::from_graph(g);
  const TriangleFlow phi(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(c.triangle_count())));
  for (auto _ : state) {
    EdgeFlow x = curl_adjoint(phi, c, ip);
    benchmark::DoNotOptimize(x.values.data());
  }
}
BENCHMARK(BM_CurlAdjoint)->Arg(64)->Arg(256);

}  // namespace
