#include <benchmark/benchmark.h>

#include <vector>

#include "unicorn/embedding.hpp"
#include "unicorn/evaluation.hpp"
#include "unicorn/lof.hpp"
#include "unicorn/neighbors.hpp"
#include "unicorn/preprocess.hpp"
#include "unicorn/rng.hpp"
#include "unicorn/simulators.hpp"
#include "unicorn/tof.hpp"

using namespace unicorn;

namespace {

EmbeddedSeries random_embedded(std::size_t n, int dim, std::uint64_t seed = 1) {
  Rng rng(seed);
  EmbeddedSeries e;
  e.dim = dim;
  e.points.resize(n * static_cast<std::size_t>(dim));
  for (double& v : e.points) v = rng.normal();
  for (std::size_t i = 0; i < n; ++i) e.time_index.push_back(static_cast<std::int64_t>(i));
  return e;
}

void BM_SpatialIndexBuild(benchmark::State& state) {
  const auto e = random_embedded(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    SpatialIndex index(e);
    benchmark::DoNotOptimize(index.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_KnnAll(benchmark::State& state) {
  const auto e = random_embedded(static_cast<std::size_t>(state.range(0)), 3);
  const SpatialIndex index(e);
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) {
    const NeighborTable t = knn_all(index, k);
    benchmark::DoNotOptimize(t.distances.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BruteForceKnn(benchmark::State& state) {
  const auto e = random_embedded(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    const NeighborTable t = brute_force_knn(e, 20);
    benchmark::DoNotOptimize(t.distances.data());
  }
}

void BM_TofScore(benchmark::State& state) {
  const auto e = random_embedded(10000, 3);
  const NeighborTable t = knn_all(SpatialIndex(e), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const ScoreSeries s = tof_score(t, e.time_index, 1.0);
    benchmark::DoNotOptimize(s.scores.data());
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}

void BM_LofScore(benchmark::State& state) {
  const auto e = random_embedded(10000, 3);
  const NeighborTable t = knn_all(SpatialIndex(e), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const ScoreSeries s = lof_score(t, e.time_index, 1.0);
    benchmark::DoNotOptimize(s.scores.data());
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}

void BM_LogisticTent(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const LabeledDataset ds = gen_logistic_tent(seed++);
    benchmark::DoNotOptimize(ds.series.values.data());
  }
}

void BM_EcgSecond(benchmark::State& state) {
  const EcgParams params;
  const EcgState initial{0.01, 0.02, 0.01, 0.02, 0.01, 0.02, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  for (auto _ : state) {
    const std::vector<double> out = simulate_ecg(params, 1.0, initial, 22.0, 82.0, -1.0, -1.0);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_Bandpass(benchmark::State& state) {
  Rng rng(2);
  Series s;
  s.dt = 1.0 / 4096.0;
  s.values.resize(static_cast<std::size_t>(state.range(0)));
  for (double& v : s.values) v = rng.normal();
  for (auto _ : state) {
    const Series f = bandpass(s, 50.0, 300.0);
    benchmark::DoNotOptimize(f.values.data());
  }
}

void BM_PipelineTofAuc(benchmark::State& state) {
  const LabeledDataset ds = gen_logistic_tent(3);
  DetectorConfig cfg;
  cfg.method = Detector::tof;
  cfg.k = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pipeline_auc(ds, cfg));
  }
}

}  // namespace

BENCHMARK(BM_SpatialIndexBuild)->Arg(1000)->Arg(10000);
BENCHMARK(BM_KnnAll)->Args({1000, 4})->Args({10000, 4})->Args({10000, 20});
BENCHMARK(BM_BruteForceKnn)->Arg(1000);
BENCHMARK(BM_TofScore)->Arg(4)->Arg(70);
BENCHMARK(BM_LofScore)->Arg(20);
BENCHMARK(BM_LogisticTent);
BENCHMARK(BM_EcgSecond);
BENCHMARK(BM_Bandpass)->Arg(4096)->Arg(49152);
BENCHMARK(BM_PipelineTofAuc);
BENCHMARK_MAIN();
