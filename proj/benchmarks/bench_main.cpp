#include <benchmark/benchmark.h>

#include "holderlab/catalog.hpp"
#include "holderlab/retraction.hpp"
#include "holderlab/rng.hpp"
#include "holderlab/verify.hpp"

using namespace holderlab;

namespace {

SeqVec dense(Index n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& t : v) t = rng.uniform(-1.0, 1.0);
  return SeqVec::from_dense(v);
}

void BM_Norm(benchmark::State& state, Norm k) {
  const SeqVec x = dense(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(norm(x, k));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_Norm, sup, Norm::sup())->Range(16, 4096);
BENCHMARK_CAPTURE(BM_Norm, l1, Norm::lp(1.0))->Range(16, 4096);
BENCHMARK_CAPTURE(BM_Norm, l2, Norm::lp(2.0))->Range(16, 4096);

void BM_Axpy(benchmark::State& state) {
  const SeqVec x = dense(state.range(0), 2), y = dense(state.range(0), 3);
  for (auto _ : state) benchmark::DoNotOptimize(axpy(0.3, x, 0.7, y));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Axpy)->Range(16, 4096);

void BM_MapApply(benchmark::State& state) {
  const auto maps = default_instances();
  const MapInstance& T = maps[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(T.name);
  const SeqVec x = sample(T.domain, 4);
  for (auto _ : state) benchmark::DoNotOptimize(T(x));
}
BENCHMARK(BM_MapApply)->DenseRange(0, static_cast<int>(default_instances().size()) - 1);

void BM_SphereRetract(benchmark::State& state) {
  const SeqVec x = 0.4 / norm(dense(64, 5), Norm::lp(1.0)) * dense(64, 5);
  for (auto _ : state) benchmark::DoNotOptimize(l1_sphere_retract(x, 1.0));
}
BENCHMARK(BM_SphereRetract);

void BM_HolderRatio(benchmark::State& state) {
  const auto T = hyperconvex_map();
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_holder_ratio(T, 10000, 7, threads));
}
BENCHMARK(BM_HolderRatio)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
