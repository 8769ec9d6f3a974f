#include "unicorn/tof.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "unicorn/errors.hpp"

namespace unicorn {

ScoreSeries tof_score(const NeighborTable& table, std::span<const std::int64_t> time_index,
                      double dt, double q, int k) {
  if (!(q > 0.0)) throw ParameterError("tof_score requires q > 0");
  if (time_index.size() != table.rows) {
    throw ParameterError("tof_score: time_index length does not match table rows");
  }
  if (!(dt > 0.0)) throw ParameterError("tof_score requires dt > 0");
  if (k == 0) k = table.k;
  if (k < 1 || k > table.k) {
    throw ParameterError("tof_score: k must satisfy 1 <= k <= table.k");
  }

  ScoreSeries out;
  out.dt = dt;
  out.orientation = ScoreOrientation::low_is_anomalous;
  out.time_index.assign(time_index.begin(), time_index.end());
  out.scores.resize(table.rows);

  const auto kk = static_cast<std::size_t>(k);
  const double inv_k = 1.0 / static_cast<double>(k);
  for (std::size_t i = 0; i < table.rows; ++i) {
    const auto neigh = table.row_indices(i).first(kk);
    const std::int64_t t = time_index[i];
    double acc = 0.0;
    if (q == 2.0) {
      for (std::int32_t j : neigh) {
        const double d = static_cast<double>(t - time_index[static_cast<std::size_t>(j)]);
        acc += d * d;
      }
      out.scores[i] = std::sqrt(acc * inv_k) * dt;
    } else {
      for (std::int32_t j : neigh) {
        const double d = std::abs(static_cast<double>(t - time_index[static_cast<std::size_t>(j)]));
        acc += std::pow(d, q);
      }
      out.scores[i] = std::pow(acc * inv_k, 1.0 / q) * dt;
    }
  }
  return out;
}

double tof_min(int k, double dt) {
  if (k < 1) throw ParameterError("tof_min requires k >= 1");
  const int lo = -(k / 2);
  const int hi = k / 2 + k % 2;
  double sum = 0.0;
  for (int i = lo; i <= hi; ++i) sum += static_cast<double>(i) * i;
  return std::sqrt(sum / static_cast<double>(k)) * dt;
}

double tof_max(int k, std::int64_t n, double dt) {
  if (k < 1) throw ParameterError("tof_max requires k >= 1");
  if (static_cast<std::int64_t>(k) >= n) throw ParameterError("tof_max requires k < N");
  const double T = static_cast<double>(n) * dt;
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    const double v = T - static_cast<double>(i) * dt;
    sum += v * v;
  }
  return std::sqrt(sum / static_cast<double>(k));
}

namespace {

void check_position(double t, double T) {
  if (!(T > 0.0)) throw ParameterError("noise baseline requires T > 0");
  if (t < 0.0 || t > T) {
    throw ParameterError("noise baseline position t must lie in [0, T]");
  }
}

}  // namespace

double noise_baseline_mean(double t, double T) {
  check_position(t, T);
  return std::sqrt(t * t - t * T + T * T / 3.0);
}

double noise_baseline_mean_q1(double t, double T) {
  check_position(t, T);
  return t * t / T - t + T / 2.0;
}

double noise_baseline_var(double t, double T, int k, NoiseVarMode mode) {
  check_position(t, T);
  if (k < 1) throw ParameterError("noise_baseline_var requires k >= 1");
  const double inv_k = 1.0 / static_cast<double>(k);
  if (mode == NoiseVarMode::q2) {
    const double second = t * t - t * T + T * T / 3.0;
    const double fourth = (std::pow(t, 5) + std::pow(T - t, 5)) / (5.0 * T);
    return inv_k * (fourth - second * second);
  }
  return inv_k * (-std::pow(t, 4) / (T * T) + 2.0 * std::pow(t, 3) / T - t * t + T * T / 12.0);
}

double threshold_from_event_length(double max_event_len, int k, double dt) {
  if (k < 1) throw ParameterError("threshold requires k >= 1");
  if (!(dt > 0.0)) throw ParameterError("threshold requires dt > 0");
  if (static_cast<double>(k) * dt > max_event_len) {
    throw ParameterError("k*dt = " + std::to_string(k * dt) + " exceeds M = " +
                         std::to_string(max_event_len) +
                         "; the minimal detectable event length is k*dt");
  }
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    const double v = max_event_len - static_cast<double>(i) * dt;
    sum += v * v;
  }
  return std::sqrt(sum / static_cast<double>(k));
}

DetectionMask detect(const ScoreSeries& scores, double theta, int pad_w,
                     std::size_t n_original) {
  if (pad_w < 0) throw ParameterError("pad_w must be nonnegative");
  DetectionMask mask;
  mask.threshold_used = theta;
  mask.flags.assign(n_original, 0);
  const auto n = static_cast<std::int64_t>(n_original);
  for (std::size_t i = 0; i < scores.scores.size(); ++i) {
    if (scores.scores[i] >= theta) continue;
    const std::int64_t center = scores.time_index[i];
    const std::int64_t lo = std::max<std::int64_t>(0, center - pad_w);
    const std::int64_t hi = std::min<std::int64_t>(n - 1, center + pad_w);
    for (std::int64_t j = lo; j <= hi; ++j) mask.flags[static_cast<std::size_t>(j)] = 1;
  }
  return mask;
}

}  // namespace unicorn
