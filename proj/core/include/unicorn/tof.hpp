#pragma once

#include <cstdint>
#include <span>

#include "unicorn/types.hpp"

namespace unicorn {

/// Temporal Outlier Factor per embedded point, in seconds:
///   TOF(t) = (mean_i |t - t_i|^q)^(1/q) * dt
/// where t_i are the time indices of the point's k nearest state-space
/// neighbors. Low values mark unique events. k = 0 uses the full table
/// width; a smaller k restricts to the first k columns (rows are sorted, so
/// those are exactly the k nearest).
ScoreSeries tof_score(const NeighborTable& table, std::span<const std::int64_t> time_index,
                      double dt, double q = 2.0, int k = 0);

/// Smallest attainable TOF for a given neighborhood size (q = 2):
/// the k nearest distinct time offsets packed around the sample point.
double tof_min(int k, double dt);

/// Approximate largest attainable TOF for a series of N samples
/// (T = N dt, neighbors stacked at the far end).
double tof_max(int k, std::int64_t n, double dt);

/// Expected TOF for uncorrelated noise at position t in a series of length T
/// seconds (q = 2): sqrt(t^2 - tT + T^2/3). Lowest mid-series, highest at the
/// edges. Requires 0 <= t <= T.
double noise_baseline_mean(double t, double T);

/// q = 1 companion of the noise baseline: t^2/T - t + T/2.
double noise_baseline_mean_q1(double t, double T);

enum class NoiseVarMode { q1, q2 };

/// Variance of the noise score at position t for k neighbors. q2 mode is the
/// variance of squared TOF, q1 mode the variance of the q = 1 score; both
/// carry the 1/k reduction.
double noise_baseline_var(double t, double T, int k, NoiseVarMode mode);

/// Threshold corresponding to a maximum detectable event length M (seconds):
///   theta = sqrt(sum_{i=0}^{k-1} (M - i dt)^2 / k),  requires k dt <= M.
/// In the dt -> 0 limit theta equals M.
double threshold_from_event_length(double max_event_len, int k, double dt);

/// Flags rows with score < theta, maps them to original sample indices and
/// dilates each flag by pad_w samples on both sides (clipped to [0, N-1]).
DetectionMask detect(const ScoreSeries& scores, double theta, int pad_w,
                     std::size_t n_original);

}  // namespace unicorn
