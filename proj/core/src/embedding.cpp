#include "unicorn/embedding.hpp"

#include <cmath>
#include <string>

#include "unicorn/errors.hpp"
#include "unicorn/neighbors.hpp"

namespace unicorn {

void validate(const Series& series) {
  if (series.values.size() < 2) throw ParameterError("series needs at least 2 samples");
  if (!(series.dt > 0.0)) throw ParameterError("series dt must be positive");
  for (double v : series.values) {
    if (!std::isfinite(v)) throw ParameterError("series contains a non-finite value");
  }
}

EmbeddedSeries embed(const Series& series, EmbeddingParams params) {
  validate(series);
  const auto n = static_cast<std::int64_t>(series.values.size());
  const int dim = params.dim;
  const int delay = params.delay;
  if (dim < 1) throw ParameterError("embedding dimension must be >= 1");
  if (delay < 1) throw ParameterError("embedding delay must be >= 1");
  const std::int64_t span = static_cast<std::int64_t>(dim - 1) * delay;
  if (span >= n) {
    throw ParameterError("series too short: (E-1)*tau = " + std::to_string(span) +
                         " >= N = " + std::to_string(n));
  }

  const std::int64_t n_e = n - span;
  EmbeddedSeries out;
  out.dim = dim;
  out.dt = series.dt;
  out.points.resize(static_cast<std::size_t>(n_e) * dim);
  out.time_index.resize(static_cast<std::size_t>(n_e));
  for (std::int64_t i = 0; i < n_e; ++i) {
    out.time_index[static_cast<std::size_t>(i)] = i;
    for (int j = 0; j < dim; ++j) {
      out.points[static_cast<std::size_t>(i) * dim + j] =
          series.values[static_cast<std::size_t>(i + static_cast<std::int64_t>(j) * delay)];
    }
  }
  return out;
}

std::vector<double> autocorrelation(const Series& series, int max_lag) {
  validate(series);
  const auto n = static_cast<std::int64_t>(series.values.size());
  if (max_lag < 0) throw ParameterError("max_lag must be nonnegative");
  if (max_lag >= n) throw ParameterError("max_lag must be smaller than N");

  double mean = 0.0;
  for (double v : series.values) mean += v;
  mean /= static_cast<double>(n);

  double c0 = 0.0;
  for (double v : series.values) c0 += (v - mean) * (v - mean);
  if (c0 == 0.0) throw DegenerateInputError("autocorrelation undefined for a constant series");

  std::vector<double> acf(static_cast<std::size_t>(max_lag) + 1);
  acf[0] = 1.0;
  for (int lag = 1; lag <= max_lag; ++lag) {
    double c = 0.0;
    for (std::int64_t t = 0; t + lag < n; ++t) {
      c += (series.values[static_cast<std::size_t>(t)] - mean) *
           (series.values[static_cast<std::size_t>(t + lag)] - mean);
    }
    acf[static_cast<std::size_t>(lag)] = c / c0;
  }
  return acf;
}

int first_zero_or_min_delay(std::span<const double> acf) {
  if (acf.size() < 2) throw ParameterError("acf needs at least two lags");
  const int n = static_cast<int>(acf.size());
  for (int lag = 1; lag < n; ++lag) {
    // zero crossing between lag-1 and lag: report the later lag
    if (acf[lag - 1] > 0.0 && acf[lag] <= 0.0) return lag;
    // first local minimum
    if (lag + 1 < n && acf[lag] < acf[lag - 1] && acf[lag] < acf[lag + 1]) return lag;
  }
  throw DataError("no zero crossing or local minimum within max_lag; increase max_lag");
}

double intrinsic_dimension(const EmbeddedSeries& embedded, int k) {
  if (k < 2) throw ParameterError("intrinsic_dimension requires k >= 2");
  const auto n_e = static_cast<std::int64_t>(embedded.size());
  if (n_e <= 2 * static_cast<std::int64_t>(k)) {
    throw ParameterError("intrinsic_dimension requires N_e > 2k");
  }

  const SpatialIndex index(embedded);
  const NeighborTable table = knn_all(index, 2 * k);

  double sum = 0.0;
  std::int64_t used = 0;
  for (std::size_t i = 0; i < table.rows; ++i) {
    const auto dists = table.row_distances(i);
    const double r_k = dists[static_cast<std::size_t>(k - 1)];
    const double r_2k = dists[static_cast<std::size_t>(2 * k - 1)];
    if (r_k <= 0.0 || r_2k <= r_k) continue;  // duplicates or zero-width scale
    sum += std::log(2.0) / std::log(r_2k / r_k);
    ++used;
  }
  if (used == 0) {
    throw DegenerateInputError("intrinsic_dimension: every point excluded (duplicate-dominated data)");
  }
  return sum / static_cast<double>(used);
}

}  // namespace unicorn
