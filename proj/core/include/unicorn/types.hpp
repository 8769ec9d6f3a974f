#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace unicorn {

/// Uniformly sampled scalar time series.
struct Series {
  std::vector<double> values;
  double dt = 1.0;  ///< seconds per sample, > 0
  double t0 = 0.0;  ///< time of values[0] in seconds

  std::size_t size() const { return values.size(); }
};

/// Throws ParameterError unless N >= 2, dt > 0 and all values are finite.
void validate(const Series& series);

/// Time-delay embedding parameters: dimension E and delay tau (in samples).
struct EmbeddingParams {
  int dim = 3;
  int delay = 1;
};

/// E-dimensional state vectors reconstructed from a scalar series.
/// Row i is [x(t_i), x(t_i + tau), ..., x(t_i + (E-1) tau)] and time_index[i]
/// is the sample index of the row's first element (forward convention).
struct EmbeddedSeries {
  std::vector<double> points;  ///< row-major, size() * dim entries
  std::vector<std::int64_t> time_index;
  int dim = 1;
  double dt = 1.0;

  std::size_t size() const { return time_index.size(); }
  std::span<const double> row(std::size_t i) const {
    return {points.data() + i * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
};

/// k nearest state-space neighbors per embedded point.
/// Rows are sorted by ascending (distance, index); a row never contains its
/// own index.
struct NeighborTable {
  std::size_t rows = 0;
  int k = 0;
  std::vector<std::int32_t> indices;  ///< rows * k, row-major
  std::vector<double> distances;     ///< rows * k, row-major

  std::span<const std::int32_t> row_indices(std::size_t i) const {
    return {indices.data() + i * static_cast<std::size_t>(k),
            static_cast<std::size_t>(k)};
  }
  std::span<const double> row_distances(std::size_t i) const {
    return {distances.data() + i * static_cast<std::size_t>(k),
            static_cast<std::size_t>(k)};
  }
};

enum class ScoreOrientation {
  low_is_anomalous,   ///< TOF: small values mark unique events
  high_is_anomalous,  ///< LOF: large values mark outliers
};

/// Per-point outlier score aligned to embedded rows.
struct ScoreSeries {
  std::vector<double> scores;
  std::vector<std::int64_t> time_index;
  double dt = 1.0;
  ScoreOrientation orientation = ScoreOrientation::low_is_anomalous;
};

/// Thresholded detections mapped back to the original sample grid.
struct DetectionMask {
  std::vector<char> flags;  ///< length N of the source series
  double threshold_used = 0.0;
};

/// [start, start+length) anomaly span in sample indices.
struct AnomalySpan {
  std::int64_t start = 0;
  std::int64_t length = 0;
};

/// Generation provenance attached to synthetic datasets.
struct DatasetMeta {
  std::string generator;
  std::uint64_t seed = 0;
  std::string rng;  ///< generator identity, e.g. "mt19937_64/boxmuller"
  std::vector<AnomalySpan> spans;
  std::map<std::string, double> params;
};

/// Series plus ground-truth anomaly mask and generation metadata.
struct LabeledDataset {
  Series series;
  std::vector<char> anomaly_mask;  ///< length N
  DatasetMeta meta;
};

}  // namespace unicorn
