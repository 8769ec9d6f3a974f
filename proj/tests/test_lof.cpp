#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "unicorn/embedding.hpp"
#include "unicorn/errors.hpp"
#include "unicorn/evaluation.hpp"
#include "unicorn/lof.hpp"
#include "unicorn/neighbors.hpp"
#include "unicorn/rng.hpp"
#include "unicorn/simulators.hpp"

using namespace unicorn;

namespace {

EmbeddedSeries points_from(std::vector<double> coords, int dim) {
  EmbeddedSeries e;
  e.dim = dim;
  e.points = std::move(coords);
  const std::size_t n = e.points.size() / static_cast<std::size_t>(dim);
  for (std::size_t i = 0; i < n; ++i) e.time_index.push_back(static_cast<std::int64_t>(i));
  return e;
}

}  // namespace

TEST_CASE("k-distance neighborhood has exactly k members for distinct distances") {
  const EmbeddedSeries e = points_from({0.0, 1.0, 2.5, 4.2, 7.0}, 1);
  const NeighborTable t = brute_force_knn(e, 4);
  CHECK(k_distance_neighborhood(t, 0, 2).size() == 2);
  CHECK(k_distance_neighborhood(t, 2, 3).size() == 3);
}

TEST_CASE("ties at the k-th radius extend the neighborhood") {
  // distances from point 0: 1, 2, 2, 2 -> |N_2| = 4 = k + 2
  const EmbeddedSeries e = points_from({0.0, 1.0, 2.0, -2.0, 2.0}, 1);
  const NeighborTable t = brute_force_knn(e, 4);
  const auto n2 = k_distance_neighborhood(t, 0, 2);
  CHECK(n2.size() == 4);
}

TEST_CASE("k = N_e - 1 neighborhood holds all other points") {
  Rng rng(5);
  std::vector<double> xs(12);
  for (double& x : xs) x = rng.normal();
  const EmbeddedSeries e = points_from(std::move(xs), 1);
  const NeighborTable t = brute_force_knn(e, 11);
  CHECK(k_distance_neighborhood(t, 3, 11).size() == 11);
}

TEST_CASE("lrd of a uniform grid interior point is 1/spacing") {
  const double spacing = 0.5;
  std::vector<double> xs;
  for (int i = 0; i < 21; ++i) xs.push_back(spacing * static_cast<double>(i));
  const EmbeddedSeries e = points_from(std::move(xs), 1);
  const NeighborTable t = brute_force_knn(e, 4);
  CHECK(local_reachability_density(t, 10, 2) == doctest::Approx(1.0 / spacing));
}

TEST_CASE("an isolated point has a much smaller lrd than cluster points") {
  std::vector<double> xs = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 9.0};
  const EmbeddedSeries e = points_from(std::move(xs), 1);
  const NeighborTable t = brute_force_knn(e, 3);
  CHECK(local_reachability_density(t, 6, 3) <
        0.1 * local_reachability_density(t, 2, 3));
}

TEST_CASE("all-duplicate neighborhoods hit the infinity sentinel and score 1") {
  const EmbeddedSeries e = points_from({1.0, 1.0, 1.0, 1.0}, 1);
  const NeighborTable t = brute_force_knn(e, 3);
  CHECK(std::isinf(local_reachability_density(t, 0, 2)));
  const ScoreSeries s = lof_score(t, e.time_index, 1.0, 2);
  for (double v : s.scores) CHECK(v == 1.0);
}

TEST_CASE("grid interior LOF is 1, a displaced point sticks out") {
  // 10x10 unit grid plus one far point
  std::vector<double> coords;
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      coords.push_back(static_cast<double>(x));
      coords.push_back(static_cast<double>(y));
    }
  }
  coords.push_back(20.0);
  coords.push_back(20.0);
  const EmbeddedSeries e = points_from(std::move(coords), 2);
  const NeighborTable t = brute_force_knn(e, 8);
  const ScoreSeries s = lof_score(t, e.time_index, 1.0, 4);
  CHECK(s.orientation == ScoreOrientation::high_is_anomalous);
  // deep-interior point: index 44 = (4,4)
  CHECK(s.scores[44] == doctest::Approx(1.0).epsilon(0.05));
  CHECK(s.scores[100] > 2.0);
}

TEST_CASE("lof matches the direct-definition oracle on random data") {
  Rng rng(23);
  const std::size_t n = 200;
  std::vector<double> coords(n * 3);
  for (double& c : coords) c = rng.normal();
  const std::vector<double> oracle = oracles::brute_lof(coords, n, 3, 7);

  const EmbeddedSeries e = points_from(std::move(coords), 3);
  const NeighborTable t = brute_force_knn(e, static_cast<int>(n) - 1);
  const ScoreSeries s = lof_score(t, e.time_index, 1.0, 7);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(std::abs(s.scores[i] - oracle[i]) < 1e-9);
  }
}

TEST_CASE("median LOF on iid uniform data sits near 1") {
  Rng rng(3);
  std::vector<double> coords(1000 * 2);
  for (double& c : coords) c = rng.uniform01();
  const EmbeddedSeries e = points_from(std::move(coords), 2);
  const NeighborTable t = knn_all(SpatialIndex(e), 12);
  const ScoreSeries s = lof_score(t, e.time_index, 1.0);
  const double med = median(s.scores);
  CHECK(med >= 0.95);
  CHECK(med <= 1.15);
}

TEST_CASE("median LOF of the normal logistic background is near 1.04") {
  std::vector<double> normal_scores;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const LabeledDataset ds = gen_logistic_tent(seed);
    const EmbeddedSeries e = embed(ds.series, {3, 1});
    const NeighborTable t = knn_all(SpatialIndex(e), 20);
    const ScoreSeries s = lof_score(t, e.time_index, 1.0);
    for (std::size_t i = 0; i < s.scores.size(); ++i) {
      if (!ds.anomaly_mask[static_cast<std::size_t>(s.time_index[i])]) {
        normal_scores.push_back(s.scores[i]);
      }
    }
  }
  const double med = median(normal_scores);
  CHECK(med > 0.99);
  CHECK(med < 1.09);
}

TEST_CASE("lof scores are invariant to translation, rotation and scaling") {
  Rng rng(14);
  const std::size_t n = 300;
  std::vector<double> coords(n * 2);
  for (double& c : coords) c = rng.normal();
  const EmbeddedSeries base = points_from(coords, 2);
  const NeighborTable bt = knn_all(SpatialIndex(base), 6);
  const ScoreSeries bs = lof_score(bt, base.time_index, 1.0);

  EmbeddedSeries moved = base;
  const double c = std::cos(1.1);
  const double s = std::sin(1.1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = base.points[2 * i];
    const double y = base.points[2 * i + 1];
    moved.points[2 * i] = 2.0 * (c * x - s * y) + 5.0;
    moved.points[2 * i + 1] = 2.0 * (s * x + c * y) - 3.0;
  }
  const NeighborTable mt = knn_all(SpatialIndex(moved), 6);
  const ScoreSeries ms = lof_score(mt, moved.time_index, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(ms.scores[i] == doctest::Approx(bs.scores[i]).epsilon(1e-9));
  }
}

TEST_CASE("lof_detect flags the top fraction with deterministic ties") {
  ScoreSeries s;
  s.dt = 1.0;

  SUBCASE("top_fraction = 1 flags everything") {
    s.scores = {0.5, 1.5, 0.7};
    s.time_index = {0, 1, 2};
    const DetectionMask m = lof_detect(s, 1.0, 3);
    CHECK(m.flags == std::vector<char>{1, 1, 1});
  }

  SUBCASE("equal scores resolve toward lower time indices") {
    s.scores = std::vector<double>(10, 2.0);
    for (std::int64_t i = 0; i < 10; ++i) s.time_index.push_back(i);
    const DetectionMask m = lof_detect(s, 0.3, 10);
    for (std::size_t i = 0; i < 10; ++i) {
      CHECK(static_cast<bool>(m.flags[i]) == (i < 3));
    }
  }

  SUBCASE("ceil arithmetic: 5.5% of 1998 rows is 110 flags") {
    s.scores.resize(1998);
    for (std::size_t i = 0; i < s.scores.size(); ++i) {
      s.scores[i] = static_cast<double>(i % 997);
      s.time_index.push_back(static_cast<std::int64_t>(i));
    }
    const DetectionMask m = lof_detect(s, 0.055, 2000);
    std::size_t count = 0;
    for (char f : m.flags) count += f != 0;
    CHECK(count == 110);
  }

  SUBCASE("top_fraction outside (0, 1] is rejected") {
    s.scores = {1.0, 2.0};
    s.time_index = {0, 1};
    CHECK_THROWS_AS(lof_detect(s, 0.0, 2), ParameterError);
    CHECK_THROWS_AS(lof_detect(s, 1.5, 2), ParameterError);
  }
}
