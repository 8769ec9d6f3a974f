#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "unicorn/embedding.hpp"
#include "unicorn/errors.hpp"
#include "unicorn/evaluation.hpp"
#include "unicorn/neighbors.hpp"
#include "unicorn/rng.hpp"
#include "unicorn/simulators.hpp"

using namespace unicorn;

namespace {

ScoreSeries high_scores(std::vector<double> values) {
  ScoreSeries s;
  s.scores = std::move(values);
  for (std::size_t i = 0; i < s.scores.size(); ++i) {
    s.time_index.push_back(static_cast<std::int64_t>(i));
  }
  s.orientation = ScoreOrientation::high_is_anomalous;
  return s;
}

}  // namespace

TEST_CASE("precision, recall and f1 from raw counts") {
  // 8 TP, 2 FP, 2 FN over 20 points
  std::vector<char> flags(20, 0);
  std::vector<char> truth(20, 0);
  for (int i = 0; i < 10; ++i) truth[static_cast<std::size_t>(i)] = 1;
  for (int i = 2; i < 12; ++i) flags[static_cast<std::size_t>(i)] = 1;
  const EvalReport r = precision_recall_f1(flags, truth);
  CHECK(r.counts.tp == 8);
  CHECK(r.counts.fp == 2);
  CHECK(r.counts.fn == 2);
  CHECK(r.counts.tn == 8);
  CHECK(r.precision == doctest::Approx(0.8));
  CHECK(r.recall == doctest::Approx(0.8));
  CHECK(r.f1 == doctest::Approx(0.8));
  CHECK(r.counts.tp + r.counts.fp + r.counts.fn + r.counts.tn == 20);
}

TEST_CASE("perfect mask scores 1 everywhere") {
  const std::vector<char> truth = {0, 1, 1, 0, 0};
  const EvalReport r = precision_recall_f1(truth, truth);
  CHECK(r.precision == 1.0);
  CHECK(r.recall == 1.0);
  CHECK(r.f1 == 1.0);
}

TEST_CASE("empty mask against nonempty truth flags degenerate precision") {
  const std::vector<char> flags(6, 0);
  const std::vector<char> truth = {0, 1, 1, 0, 0, 1};
  const EvalReport r = precision_recall_f1(flags, truth);
  CHECK(r.precision_degenerate);
  CHECK(r.precision == 0.0);
  CHECK(r.recall == 0.0);
  CHECK(r.f1 == 0.0);
}

TEST_CASE("f1 is symmetric in precision and recall") {
  // swap the roles of flags and truth: precision and recall swap, f1 invariant
  std::vector<char> flags = {1, 1, 0, 0, 1, 0, 1, 0};
  std::vector<char> truth = {1, 0, 0, 1, 1, 1, 0, 0};
  const EvalReport a = precision_recall_f1(flags, truth);
  const EvalReport b = precision_recall_f1(truth, flags);
  CHECK(a.precision == doctest::Approx(b.recall));
  CHECK(a.recall == doctest::Approx(b.precision));
  CHECK(a.f1 == doctest::Approx(b.f1));
}

TEST_CASE("six-point AUC hand case") {
  const ScoreSeries s = high_scores({0.9, 0.8, 0.7, 0.6, 0.5, 0.4});
  const std::vector<char> truth = {1, 1, 0, 1, 0, 0};
  CHECK(roc_auc(s, truth) == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("perfectly separated scores and all-tied scores") {
  const std::vector<char> truth = {0, 0, 0, 1, 1};
  CHECK(roc_auc(high_scores({1, 2, 3, 8, 9}), truth) == doctest::Approx(1.0));
  CHECK(roc_auc(high_scores({5, 5, 5, 5, 5}), truth) == doctest::Approx(0.5));
}

TEST_CASE("orientation flip complements the AUC") {
  Rng rng(12);
  std::vector<double> scores(60);
  std::vector<char> truth(60);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    scores[i] = rng.uniform_int(0, 9);  // ties included
    truth[i] = rng.uniform01() < 0.3 ? 1 : 0;
  }
  truth[0] = 1;
  truth[1] = 0;
  ScoreSeries hi = high_scores(scores);
  ScoreSeries lo = hi;
  lo.orientation = ScoreOrientation::low_is_anomalous;
  CHECK(roc_auc(hi, truth) + roc_auc(lo, truth) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("AUC is invariant under strictly monotone score transforms") {
  Rng rng(77);
  std::vector<double> scores(80);
  std::vector<char> truth(80);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    scores[i] = rng.normal();
    truth[i] = rng.uniform01() < 0.4 ? 1 : 0;
  }
  truth[0] = 1;
  truth[1] = 0;
  std::vector<double> warped(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) warped[i] = std::exp(scores[i]) + 3.0;
  CHECK(roc_auc(high_scores(scores), truth) == roc_auc(high_scores(warped), truth));
}

TEST_CASE("rank AUC equals threshold-sweep trapezoid AUC") {
  Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(10, 500));
    std::vector<double> scores(n);
    std::vector<char> truth(n);
    const bool quantize = trial % 2 == 0;
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = quantize ? static_cast<double>(rng.uniform_int(0, 20)) / 4.0 : rng.normal();
      truth[i] = rng.uniform01() < 0.35 ? 1 : 0;
    }
    truth[0] = 1;
    truth[n - 1] = 0;
    const double rank = roc_auc(high_scores(scores), truth);
    const double trap = oracles::trapezoid_auc(scores, truth);
    CHECK(std::abs(rank - trap) < 1e-12);
  }
}

TEST_CASE("single-class truth is rejected") {
  const std::vector<char> truth(5, 1);
  CHECK_THROWS_AS(roc_auc(high_scores({1, 2, 3, 4, 5}), truth), DegenerateInputError);
}

TEST_CASE("median and MAD basics") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == doctest::Approx(2.5));
  const std::vector<double> v = {1.0, 1.0, 2.0, 4.0, 8.0};
  CHECK(median(v) == 2.0);
  CHECK(median_abs_deviation(v) == 1.0);
  const std::vector<double> flat = {5.0, 5.0, 5.0};
  CHECK(median_abs_deviation(flat) == 0.0);
}

TEST_CASE("spearman endpoints") {
  const std::vector<double> a = {1, 2, 3, 4, 5};
  const std::vector<double> dec = {9, 7, 5, 3, 1};
  const std::vector<double> inc = {2, 4, 9, 11, 30};
  const std::vector<double> flat = {4, 4, 4, 4, 4};
  CHECK(spearman(a, dec) == doctest::Approx(-1.0));
  CHECK(spearman(a, inc) == doctest::Approx(1.0));
  CHECK(spearman(a, flat) == 0.0);
}

TEST_CASE("pipeline AUC separates the tent anomaly") {
  const LabeledDataset ds = gen_logistic_tent(3);
  DetectorConfig tof;
  tof.method = Detector::tof;
  tof.k = 4;
  const double auc = pipeline_auc(ds, tof);
  CHECK(auc > 0.8);

  DetectorConfig lof;
  lof.method = Detector::lof;
  lof.k = 28;
  const double lauc = pipeline_auc(ds, lof);
  CHECK(lauc > 0.5);
}

TEST_CASE("detection degrades gracefully under observation noise") {
  DetectorConfig cfg;
  cfg.method = Detector::tof;
  cfg.k = 4;
  const auto median_auc_at = [&](double sigma) {
    std::vector<double> aucs;
    for (std::uint64_t s = 1; s <= 10; ++s) {
      LogisticOpts opts;
      opts.noise_sigma = sigma;
      aucs.push_back(pipeline_auc(gen_logistic_tent(s, opts), cfg));
    }
    return median(aucs);
  };
  const double low = median_auc_at(0.005);
  const double high = median_auc_at(0.1);
  CHECK(low > 0.9);
  CHECK(high > 0.65);
  CHECK(low > high);
}

TEST_CASE("k_sweep aggregates medians with zero MAD for one realization") {
  const std::vector<LabeledDataset> family = {gen_logistic_tent(1)};
  DetectorConfig cfg;
  cfg.method = Detector::tof;
  const auto sweep = k_sweep(family, cfg, 2, 4);
  REQUIRE(sweep.size() == 3);
  for (const auto& row : sweep) {
    CHECK(row.mad_auc == 0.0);
    CHECK(row.median_auc > 0.5);
  }
  CHECK(sweep[0].k == 2);
  CHECK(sweep[2].k == 4);
}

TEST_CASE("k_sweep parallel run matches the serial run") {
  std::vector<LabeledDataset> family;
  for (std::uint64_t s = 1; s <= 6; ++s) family.push_back(gen_logistic_tent(s));
  DetectorConfig cfg;
  cfg.method = Detector::lof;
  const auto serial = k_sweep(family, cfg, 20, 24, 1);
  const auto parallel = k_sweep(family, cfg, 20, 24, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].median_auc == parallel[i].median_auc);
    CHECK(serial[i].mad_auc == parallel[i].mad_auc);
  }
}

TEST_CASE("iei_analysis pairs IEIs with AUCs and reports trend statistics") {
  std::vector<LabeledDataset> family;
  for (std::uint64_t s = 1; s <= 8; ++s) family.push_back(gen_logistic_double_tent(s));
  DetectorConfig tof;
  tof.method = Detector::tof;
  tof.k = 4;
  DetectorConfig lof;
  lof.method = Detector::lof;
  lof.k = 28;
  const IeiAnalysis a = iei_analysis(family, tof, lof, 2);
  REQUIRE(a.tof.size() == family.size());
  REQUIRE(a.lof.size() == family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    CHECK(a.tof[i].iei == family[i].meta.params.at("iei_samples"));
    CHECK(a.tof[i].auc >= 0.0);
    CHECK(a.tof[i].auc <= 1.0);
  }
  CHECK(std::abs(a.spearman_tof) <= 1.0);
  CHECK(std::abs(a.spearman_lof) <= 1.0);
}

TEST_CASE("state-space density on a uniform grid") {
  EmbeddedSeries e;
  e.dim = 1;
  const double spacing = 0.5;
  for (int i = 0; i < 41; ++i) {
    e.points.push_back(spacing * static_cast<double>(i));
    e.time_index.push_back(i);
  }
  const NeighborTable t = brute_force_knn(e, 2);
  std::vector<char> truth(e.size(), 0);
  truth[5] = 1;  // single "anomalous" interior point for the class split
  const DensityReport r = state_space_density(t, truth, 2);
  CHECK(r.median_normal == doctest::Approx(1.0 / spacing));
  CHECK(r.median_anomaly == doctest::Approx(1.0 / spacing));
  CHECK(r.infinite_excluded == 0);
}

TEST_CASE("doubling all coordinates halves the densities") {
  Rng rng(6);
  EmbeddedSeries e;
  e.dim = 2;
  for (int i = 0; i < 200; ++i) {
    e.points.push_back(rng.normal());
    e.points.push_back(rng.normal());
    e.time_index.push_back(i);
  }
  EmbeddedSeries doubled = e;
  for (double& c : doubled.points) c *= 2.0;

  std::vector<char> truth(e.size(), 0);
  for (int i = 0; i < 40; ++i) truth[static_cast<std::size_t>(i)] = 1;

  const DensityReport a = state_space_density(brute_force_knn(e, 20), truth, 20);
  const DensityReport b = state_space_density(brute_force_knn(doubled, 20), truth, 20);
  CHECK(b.median_normal == doctest::Approx(a.median_normal / 2.0).epsilon(1e-12));
  CHECK(b.median_anomaly == doctest::Approx(a.median_anomaly / 2.0).epsilon(1e-12));
}

TEST_CASE("duplicate points are excluded from the density medians") {
  EmbeddedSeries e;
  e.dim = 1;
  const std::vector<double> xs = {1.0, 1.0, 2.0, 3.0, 4.0, 5.0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    e.points.push_back(xs[i]);
    e.time_index.push_back(static_cast<std::int64_t>(i));
  }
  const NeighborTable t = brute_force_knn(e, 1);
  std::vector<char> truth(e.size(), 0);
  truth[4] = 1;
  const DensityReport r = state_space_density(t, truth, 1);
  CHECK(r.infinite_excluded == 2);  // the duplicate pair has zero 1-distance
}
