#include <benchmark/benchmark.h>

#include <vector>

#include "netgeo/fisher.hpp"
#include "netgeo/linalg.hpp"
#include "netgeo/network.hpp"
#include "netgeo/volume.hpp"

using namespace netgeo;

namespace {

SymMatrix sample_covariance(int n) {
  SymMatrix c(n);
  for (int i = 0; i < n; ++i) {
    c.set(i, i, 1.5 + 0.25 * i);
    if (i + 1 < n) c.set(i, i + 1, 1.0);
  }
  return c;
}

void BM_Determinant(benchmark::State& state) {
  const SymMatrix c = sample_covariance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(determinant(c));
}
BENCHMARK(BM_Determinant)->DenseRange(2, 8, 2);

void BM_Adjugate(benchmark::State& state) {
  const SymMatrix c = sample_covariance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(adjugate(c));
}
BENCHMARK(BM_Adjugate)->DenseRange(2, 8, 2);

void BM_IntegrandCore(benchmark::State& state) {
  const Network net = clique_network(6, 4);
  IntegrandEvaluator eval(net);
  std::vector<double> theta = {2.1, 1.7, 3.2, 2.5, 0.8, 1.1};
  for (auto _ : state) benchmark::DoNotOptimize(eval(theta));
}
BENCHMARK(BM_IntegrandCore);

void BM_EstimateVolume(benchmark::State& state) {
  const Network net = clique_network(6, 4);
  McConfig cfg;
  cfg.samples = 1 << 16;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_volume(net, 3.5, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.samples);
}
BENCHMARK(BM_EstimateVolume)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
