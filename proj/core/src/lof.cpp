#include "unicorn/lof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "unicorn/errors.hpp"

namespace unicorn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int resolve_k(const NeighborTable& table, int k) {
  if (k == 0) return table.k;
  if (k < 1 || k > table.k) {
    throw ParameterError("lof: k must satisfy 1 <= k <= table.k, got " + std::to_string(k));
  }
  return k;
}

}  // namespace

std::vector<std::int32_t> k_distance_neighborhood(const NeighborTable& table, std::size_t i,
                                                  int k) {
  k = resolve_k(table, k);
  const auto dists = table.row_distances(i);
  const auto idx = table.row_indices(i);
  const double k_dist = dists[static_cast<std::size_t>(k - 1)];
  std::vector<std::int32_t> members;
  members.reserve(static_cast<std::size_t>(k));
  for (std::size_t j = 0; j < dists.size(); ++j) {
    if (dists[j] <= k_dist) members.push_back(idx[j]);
  }
  return members;
}

namespace {

double lrd_of_row(const NeighborTable& table, std::size_t i, int k,
                  std::span<const double> k_distance) {
  const auto dists = table.row_distances(i);
  const auto idx = table.row_indices(i);
  const double k_dist = dists[static_cast<std::size_t>(k - 1)];
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t j = 0; j < dists.size(); ++j) {
    if (dists[j] > k_dist) break;  // rows are sorted ascending
    sum += std::max(k_distance[static_cast<std::size_t>(idx[j])], dists[j]);
    ++count;
  }
  if (sum == 0.0) return kInf;
  return static_cast<double>(count) / sum;
}

}  // namespace

double local_reachability_density(const NeighborTable& table, std::size_t i, int k) {
  k = resolve_k(table, k);
  std::vector<double> k_distance(table.rows);
  for (std::size_t r = 0; r < table.rows; ++r) {
    k_distance[r] = table.row_distances(r)[static_cast<std::size_t>(k - 1)];
  }
  return lrd_of_row(table, i, k, k_distance);
}

ScoreSeries lof_score(const NeighborTable& table, std::span<const std::int64_t> time_index,
                      double dt, int k) {
  k = resolve_k(table, k);
  if (time_index.size() != table.rows) {
    throw ParameterError("lof_score: time_index length does not match table rows");
  }

  std::vector<double> k_distance(table.rows);
  for (std::size_t r = 0; r < table.rows; ++r) {
    k_distance[r] = table.row_distances(r)[static_cast<std::size_t>(k - 1)];
  }
  std::vector<double> lrd(table.rows);
  for (std::size_t r = 0; r < table.rows; ++r) {
    lrd[r] = lrd_of_row(table, r, k, k_distance);
  }

  ScoreSeries out;
  out.dt = dt;
  out.orientation = ScoreOrientation::high_is_anomalous;
  out.time_index.assign(time_index.begin(), time_index.end());
  out.scores.resize(table.rows);
  for (std::size_t r = 0; r < table.rows; ++r) {
    const auto dists = table.row_distances(r);
    const auto idx = table.row_indices(r);
    const double k_dist = dists[static_cast<std::size_t>(k - 1)];
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < dists.size(); ++j) {
      if (dists[j] > k_dist) break;
      const double num = lrd[static_cast<std::size_t>(idx[j])];
      const double den = lrd[r];
      if (std::isinf(num) && std::isinf(den)) {
        sum += 1.0;  // duplicate cluster compared with itself
      } else {
        sum += num / den;  // x/inf == 0, inf/x == inf per IEEE
      }
      ++count;
    }
    out.scores[r] = sum / static_cast<double>(count);
  }
  return out;
}

DetectionMask lof_detect(const ScoreSeries& scores, double top_fraction,
                         std::size_t n_original) {
  if (!(top_fraction > 0.0) || top_fraction > 1.0) {
    throw ParameterError("top_fraction must lie in (0, 1]");
  }
  const std::size_t n_rows = scores.scores.size();
  const auto flagged =
      static_cast<std::size_t>(std::ceil(top_fraction * static_cast<double>(n_rows)));

  std::vector<std::size_t> order(n_rows);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores.scores[a] != scores.scores[b]) return scores.scores[a] > scores.scores[b];
    return scores.time_index[a] < scores.time_index[b];
  });

  DetectionMask mask;
  mask.flags.assign(n_original, 0);
  mask.threshold_used =
      flagged > 0 ? scores.scores[order[std::min(flagged, n_rows) - 1]] : kInf;
  for (std::size_t r = 0; r < std::min(flagged, n_rows); ++r) {
    const std::int64_t t = scores.time_index[order[r]];
    if (t >= 0 && static_cast<std::size_t>(t) < n_original) {
      mask.flags[static_cast<std::size_t>(t)] = 1;
    }
  }
  return mask;
}

}  // namespace unicorn
