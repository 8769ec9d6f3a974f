#pragma once

#include <cmath>
#include <cstdint>

#include "unicorn/ecg_model.hpp"
#include "unicorn/types.hpp"

namespace unicorn {

/// One logistic-map update x' = r x (1 - x).
inline double logistic_step(double r, double x) { return r * x * (1.0 - x); }

/// One tent-map anomaly update x' = 1.59 - 2.15 |x - 0.7| - 0.9 x.
inline double tent_step(double x) { return 1.59 - 2.15 * std::abs(x - 0.7) - 0.9 * x; }

struct LogisticOpts {
  std::int64_t n = 2000;
  double r = 3.9;
  std::int64_t len_min = 20;
  std::int64_t len_max = 200;
  double noise_sigma = 0.0;  ///< optional additive Gaussian observation noise
};

struct RandwalkOpts {
  std::int64_t n = 2000;
  double mu = 0.001;
  double sigma = 0.01;
  std::int64_t len_min = 2;
  std::int64_t len_max = 200;
};

struct EcgOpts {
  double duration = 100.0;  ///< seconds, including warmup
  double base_rate_mean = 22.0;
  double base_rate_sigma = 3.0;
  double tachy_rate_mean = 82.0;
  double tachy_rate_sigma = 3.0;
  double tachy_len_min = 2.0;  ///< seconds
  double tachy_len_max = 20.0;
  int downsample = 10;  ///< non-overlapping rolling-mean window
};

/// Logistic map with one uniformly placed tent-map anomaly span.
LabeledDataset gen_logistic_tent(std::uint64_t seed, const LogisticOpts& opts = {});

/// Logistic map with one linear anomaly span x' = (1 + a) x, a = +-slope
/// with reflective sign flips at the (0, 1) borders.
LabeledDataset gen_logistic_linear(std::uint64_t seed, const LogisticOpts& opts = {},
                                   double slope = 0.001);

/// Multiplicative random walk x_i = prod(1 + w_j), w ~ Normal(mu, sigma),
/// with one span replaced by the straight line between its endpoint values.
LabeledDataset gen_randwalk_linear(std::uint64_t seed, const RandwalkOpts& opts = {});

/// Logistic map with two disjoint tent-map spans; meta records the
/// inter-event interval (gap between the first span's end and the second's
/// start) under params["iei_samples"].
LabeledDataset gen_logistic_double_tent(std::uint64_t seed, const LogisticOpts& opts = {});

/// Synthetic ECG with one tachycardic span (SA rate switched to the tachy
/// draw), integrated at dt_sim, warmup discarded, then downsampled by a
/// non-overlapping rolling mean. Rates are drawn per realization:
/// f1 ~ Normal(base_rate_mean, base_rate_sigma) and Normal(tachy_*) inside
/// the span; both couplings are set to the drawn base rate.
LabeledDataset gen_ecg(std::uint64_t seed, const EcgOpts& opts = {},
                       EcgParams params = {});

}  // namespace unicorn
