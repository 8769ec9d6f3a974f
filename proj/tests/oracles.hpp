// Test-only reference implementations, kept independent of the library code
// paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace oracles {

/// Direct-definition LOF from raw points: full pairwise distances, classical
/// k-distance with ties, reachability, lrd, LOF. O(N^2 log N).
inline std::vector<double> brute_lof(const std::vector<double>& points, std::size_t n, int dim,
                                     int k) {
  struct Cand {
    double d;
    std::size_t idx;
  };
  std::vector<std::vector<Cand>> sorted(n);
  for (std::size_t i = 0; i < n; ++i) {
    sorted[i].reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double s = 0.0;
      for (int c = 0; c < dim; ++c) {
        const double d = points[i * dim + c] - points[j * dim + c];
        s += d * d;
      }
      sorted[i].push_back({std::sqrt(s), j});
    }
    std::sort(sorted[i].begin(), sorted[i].end(), [](const Cand& a, const Cand& b) {
      if (a.d != b.d) return a.d < b.d;
      return a.idx < b.idx;
    });
  }

  std::vector<double> k_dist(n);
  std::vector<std::vector<Cand>> neighborhood(n);
  for (std::size_t i = 0; i < n; ++i) {
    k_dist[i] = sorted[i][static_cast<std::size_t>(k - 1)].d;
    for (const Cand& c : sorted[i]) {
      if (c.d > k_dist[i]) break;
      neighborhood[i].push_back(c);
    }
  }

  std::vector<double> lrd(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (const Cand& c : neighborhood[i]) sum += std::max(k_dist[c.idx], c.d);
    lrd[i] = sum == 0.0 ? std::numeric_limits<double>::infinity()
                        : static_cast<double>(neighborhood[i].size()) / sum;
  }

  std::vector<double> lof(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (const Cand& c : neighborhood[i]) {
      if (std::isinf(lrd[c.idx]) && std::isinf(lrd[i])) {
        sum += 1.0;
      } else {
        sum += lrd[c.idx] / lrd[i];
      }
    }
    lof[i] = sum / static_cast<double>(neighborhood[i].size());
  }
  return lof;
}

/// Threshold-sweep trapezoidal ROC AUC over anomaly scores (higher = more
/// anomalous), sweeping every distinct score as a threshold.
inline double trapezoid_auc(std::span<const double> anomaly_score, std::span<const char> truth) {
  const std::size_t n = anomaly_score.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return anomaly_score[a] > anomaly_score[b];
  });

  double n_pos = 0.0;
  double n_neg = 0.0;
  for (char t : truth) (t != 0 ? n_pos : n_neg) += 1.0;

  double auc = 0.0;
  double tp = 0.0, fp = 0.0;
  double prev_tp = 0.0, prev_fp = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && anomaly_score[order[j + 1]] == anomaly_score[order[i]]) ++j;
    for (std::size_t r = i; r <= j; ++r) {
      if (truth[order[r]] != 0) tp += 1.0;
      else fp += 1.0;
    }
    // one ROC vertex per distinct threshold; ties form diagonal segments
    auc += (fp / n_neg - prev_fp / n_neg) * (tp / n_pos + prev_tp / n_pos) / 2.0;
    prev_tp = tp;
    prev_fp = fp;
    i = j + 1;
  }
  return auc;
}

/// Median inter-peak interval via the steep-slope R-wave picker: samples
/// whose absolute first difference exceeds half the segment maximum, merged
/// within a minimum separation.
inline double median_rr_interval(std::span<const double> signal, double dt,
                                 double min_sep_seconds = 0.15) {
  if (signal.size() < 3) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> slope(signal.size() - 1);
  double max_slope = 0.0;
  for (std::size_t i = 0; i + 1 < signal.size(); ++i) {
    slope[i] = std::abs(signal[i + 1] - signal[i]);
    max_slope = std::max(max_slope, slope[i]);
  }
  const double threshold = 0.5 * max_slope;
  const auto min_sep = static_cast<std::ptrdiff_t>(min_sep_seconds / dt);
  std::vector<std::ptrdiff_t> peaks;
  for (std::size_t i = 0; i < slope.size(); ++i) {
    if (slope[i] <= threshold) continue;
    if (!peaks.empty() && static_cast<std::ptrdiff_t>(i) - peaks.back() <= min_sep) continue;
    peaks.push_back(static_cast<std::ptrdiff_t>(i));
  }
  if (peaks.size() < 3) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> rr(peaks.size() - 1);
  for (std::size_t i = 0; i + 1 < peaks.size(); ++i) {
    rr[i] = static_cast<double>(peaks[i + 1] - peaks[i]) * dt;
  }
  std::sort(rr.begin(), rr.end());
  return rr[rr.size() / 2];
}

}  // namespace oracles
