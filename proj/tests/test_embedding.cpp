#include <doctest.h>

#include <cmath>
#include <vector>

#include "unicorn/embedding.hpp"
#include "unicorn/errors.hpp"
#include "unicorn/rng.hpp"

using namespace unicorn;

namespace {

Series make_series(std::vector<double> values, double dt = 1.0) {
  Series s;
  s.values = std::move(values);
  s.dt = dt;
  return s;
}

}  // namespace

TEST_CASE("embed expands a short series") {
  const Series s = make_series({1, 2, 3, 4, 5});
  const EmbeddedSeries e = embed(s, {3, 1});
  REQUIRE(e.size() == 3);
  CHECK(e.dim == 3);
  const std::vector<double> expected = {1, 2, 3, 2, 3, 4, 3, 4, 5};
  CHECK(e.points == expected);
  CHECK(e.time_index == std::vector<std::int64_t>{0, 1, 2});
}

TEST_CASE("embed with E=1 is the identity for any delay") {
  Rng rng(11);
  std::vector<double> v(64);
  for (double& x : v) x = rng.normal();
  const Series s = make_series(v);
  for (int tau : {1, 3, 17}) {
    const EmbeddedSeries e = embed(s, {1, tau});
    REQUIRE(e.size() == v.size());
    CHECK(e.points == v);
  }
}

TEST_CASE("embedded row count is N minus (E-1)tau") {
  Rng rng(5);
  std::vector<double> v(2000);
  for (double& x : v) x = rng.uniform01();
  const EmbeddedSeries e = embed(make_series(v), {3, 1});
  CHECK(e.size() == 1998);
}

TEST_CASE("embed rejects series too short for the parameters") {
  const Series s = make_series({1, 2, 3, 4});
  CHECK_THROWS_AS(embed(s, {3, 2}), ParameterError);
  CHECK_THROWS_AS(embed(s, {5, 1}), ParameterError);
  CHECK_THROWS_AS(embed(s, {0, 1}), ParameterError);
  CHECK_THROWS_AS(embed(s, {2, 0}), ParameterError);
}

TEST_CASE("every sample is recoverable from the embedding") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(20, 200));
    std::vector<double> v(n);
    for (double& x : v) x = rng.normal();
    const int dim = static_cast<int>(rng.uniform_int(1, 5));
    const int max_tau = static_cast<int>((n - 1) / std::max(1, dim - 1));
    const int tau = static_cast<int>(rng.uniform_int(1, std::max(1, std::min(4, max_tau))));
    if (static_cast<std::size_t>((dim - 1) * tau) >= n) continue;

    const EmbeddedSeries e = embed(make_series(v), {dim, tau});
    std::vector<char> covered(n, 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int j = 0; j < dim; ++j) {
        const std::size_t src = i + static_cast<std::size_t>(j) * tau;
        CHECK(e.row(i)[static_cast<std::size_t>(j)] == v[src]);
        covered[src] = 1;
      }
    }
    for (char c : covered) CHECK(c == 1);
    CHECK(e.size() + static_cast<std::size_t>((dim - 1) * tau) == n);
  }
}

TEST_CASE("autocorrelation is 1 at lag zero and flips sign with the series") {
  Rng rng(3);
  std::vector<double> v(512);
  for (double& x : v) x = rng.normal();
  const auto acf = autocorrelation(make_series(v), 50);
  CHECK(acf[0] == 1.0);

  std::vector<double> neg(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
  const auto acf_neg = autocorrelation(make_series(neg), 50);
  for (std::size_t l = 0; l <= 50; ++l) CHECK(acf[l] == doctest::Approx(acf_neg[l]).epsilon(1e-12));
}

TEST_CASE("autocorrelation of a sine tracks the cosine with P/4 zero crossing") {
  const std::size_t n = 2048;
  std::vector<double> v(n);
  for (std::size_t t = 0; t < n; ++t) {
    v[t] = std::sin(2.0 * 3.14159265358979323846 * static_cast<double>(t) / 32.0);
  }
  const auto acf = autocorrelation(make_series(v), 40);
  int first_nonpositive = -1;
  for (int l = 1; l <= 40; ++l) {
    if (acf[static_cast<std::size_t>(l)] <= 0.0) {
      first_nonpositive = l;
      break;
    }
  }
  // analytic acf is cos(2 pi lag / 32): zero at lag 8; the finite-sample
  // estimate sits within one lag of it
  CHECK(first_nonpositive == 9);
  CHECK(std::abs(acf[8]) < 0.01);
  CHECK(acf[16] == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("white-noise autocorrelation stays within the 3/sqrt(N) band") {
  Rng rng(17);
  const std::size_t n = 4000;
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  const int max_lag = 200;
  const auto acf = autocorrelation(make_series(v), max_lag);
  const double band = 3.0 / std::sqrt(static_cast<double>(n));
  int inside = 0;
  for (int l = 1; l <= max_lag; ++l) {
    if (std::abs(acf[static_cast<std::size_t>(l)]) < band) ++inside;
  }
  CHECK(inside >= static_cast<int>(0.97 * max_lag));
}

TEST_CASE("autocorrelation rejects constant series") {
  CHECK_THROWS_AS(autocorrelation(make_series({2, 2, 2, 2}), 2), DegenerateInputError);
}

TEST_CASE("delay helper reports the later lag of a sign change") {
  const std::vector<double> acf = {1.0, 0.5, -0.1, -0.4};
  CHECK(first_zero_or_min_delay(acf) == 2);
}

TEST_CASE("delay helper reports a local minimum that precedes any crossing") {
  const std::vector<double> acf = {1.0, 0.6, 0.4, 0.5, 0.3, -0.1};
  CHECK(first_zero_or_min_delay(acf) == 2);
}

TEST_CASE("delay helper picks P/4 for a pure oscillation") {
  const std::size_t n = 2048;
  std::vector<double> v(n);
  for (std::size_t t = 0; t < n; ++t) {
    // quarter-period phase keeps the finite-sample estimate on the analytic side
    v[t] = std::sin(2.0 * 3.14159265358979323846 * (static_cast<double>(t) / 32.0 + 0.25));
  }
  const auto acf = autocorrelation(make_series(v), 40);
  CHECK(first_zero_or_min_delay(acf) == 8);
}

TEST_CASE("delay helper rejects a monotone positive acf") {
  const std::vector<double> acf = {1.0, 0.9, 0.8, 0.7, 0.6};
  CHECK_THROWS_AS(first_zero_or_min_delay(acf), DataError);
}

TEST_CASE("intrinsic dimension of a line segment is near 1") {
  EmbeddedSeries e;
  e.dim = 3;
  const std::size_t n = 500;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = static_cast<double>(i) / static_cast<double>(n);
    e.points.insert(e.points.end(), {v, v, v});
    e.time_index.push_back(static_cast<std::int64_t>(i));
  }
  const double d = intrinsic_dimension(e, 8);
  CHECK(d == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("intrinsic dimension of a filled square is near 2") {
  Rng rng(7);
  EmbeddedSeries e;
  e.dim = 2;
  const std::size_t n = 2000;
  for (std::size_t i = 0; i < n; ++i) {
    e.points.push_back(rng.uniform01());
    e.points.push_back(rng.uniform01());
    e.time_index.push_back(static_cast<std::int64_t>(i));
  }
  const double d = intrinsic_dimension(e, 8);
  CHECK(std::abs(d - 2.0) <= 0.3);
}

TEST_CASE("intrinsic dimension preconditions and degenerate input") {
  EmbeddedSeries tiny;
  tiny.dim = 1;
  for (int i = 0; i < 8; ++i) {
    tiny.points.push_back(static_cast<double>(i));
    tiny.time_index.push_back(i);
  }
  CHECK_THROWS_AS(intrinsic_dimension(tiny, 4), ParameterError);  // N_e <= 2k
  CHECK_THROWS_AS(intrinsic_dimension(tiny, 1), ParameterError);  // k < 2

  EmbeddedSeries dup;
  dup.dim = 1;
  for (int i = 0; i < 16; ++i) {
    dup.points.push_back(1.0);
    dup.time_index.push_back(i);
  }
  CHECK_THROWS_AS(intrinsic_dimension(dup, 2), DegenerateInputError);
}
