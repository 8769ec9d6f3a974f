#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "unicorn/types.hpp"

namespace unicorn {

// ---------------------------------------------------------------------------
// point-wise detection metrics
// ---------------------------------------------------------------------------

struct EvalCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;
};

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  EvalCounts counts;
  bool precision_degenerate = false;  ///< no positive predictions
  bool recall_degenerate = false;     ///< no positive truth
};

/// Pointwise TP/FP/FN/TN counting; degenerate denominators yield 0 and set
/// the corresponding flag. Lengths must match.
EvalReport precision_recall_f1(std::span<const char> flags, std::span<const char> truth);

/// ROC AUC via the rank-statistic (Mann-Whitney) formulation with midrank
/// tie correction; equivalent to trapezoidal integration over all
/// thresholds. Score orientation is honored (TOF scores are negated). Throws
/// DegenerateInputError when truth has a single class.
double roc_auc(const ScoreSeries& scores, std::span<const char> truth);

// ---------------------------------------------------------------------------
// robust aggregates
// ---------------------------------------------------------------------------

double median(std::vector<double> values);

/// Median absolute deviation around the median.
double median_abs_deviation(std::span<const double> values);

/// Spearman rank correlation with midranks; returns 0 when either input is
/// constant.
double spearman(std::span<const double> a, std::span<const double> b);

// ---------------------------------------------------------------------------
// detector pipelines
// ---------------------------------------------------------------------------

enum class Detector { tof, lof };

enum class PreprocessKind { none, first_diff, log_diff };

struct DetectorConfig {
  Detector method = Detector::tof;
  int embed_dim = 3;
  int embed_delay = 1;  ///< samples
  int k = 4;
  double q = 2.0;
  double max_event_len = 110.0;  ///< M, seconds; sets the TOF threshold theta(M)
  int pad_w = -1;                ///< detection padding; -1 means floor(k/2)
  double top_fraction = 0.055;   ///< LOF percentile threshold
  PreprocessKind preprocess = PreprocessKind::none;
  double bandpass_lo = 0.0;  ///< Hz; both > 0 to enable
  double bandpass_hi = 0.0;
};

struct PipelineResult {
  ScoreSeries scores;
  DetectionMask mask;  ///< aligned to the preprocessed series
  double theta = 0.0;  ///< resolved TOF threshold (unused for LOF)
  std::vector<char> truth;       ///< ground truth aligned to the preprocessed series
  std::size_t aligned_n = 0;     ///< preprocessed series length
  std::int64_t index_offset = 0; ///< original index = aligned index + offset
};

/// preprocess -> embed -> kNN -> score -> threshold. truth may be null.
PipelineResult run_pipeline(const Series& series, const std::vector<char>* truth,
                            const DetectorConfig& config);

/// ROC AUC of the configured detector against the dataset's mask.
double pipeline_auc(const LabeledDataset& dataset, const DetectorConfig& config);

/// Pointwise precision/recall/F1 of the configured detector.
EvalReport pipeline_prf(const LabeledDataset& dataset, const DetectorConfig& config);

// ---------------------------------------------------------------------------
// experiment harnesses
// ---------------------------------------------------------------------------

struct KSweepEntry {
  int k = 0;
  double median_auc = 0.0;
  double mad_auc = 0.0;
};

/// Median +- MAD of per-realization AUC for every k in [k_lo, k_hi].
/// Realizations run on `jobs` worker threads; aggregation is
/// single-threaded and deterministic.
std::vector<KSweepEntry> k_sweep(const std::vector<LabeledDataset>& family,
                                 const DetectorConfig& base, int k_lo, int k_hi,
                                 int jobs = 1);

struct IeiPoint {
  double iei = 0.0;  ///< samples between the two spans
  double auc = 0.0;
};

struct IeiAnalysis {
  std::vector<IeiPoint> tof;
  std::vector<IeiPoint> lof;
  double spearman_tof = 0.0;
  double spearman_lof = 0.0;
};

/// Per-realization AUC against the inter-event interval for double-anomaly
/// datasets (meta params carry "iei_samples").
IeiAnalysis iei_analysis(const std::vector<LabeledDataset>& family,
                         const DetectorConfig& tof_config, const DetectorConfig& lof_config,
                         int jobs = 1);

struct DensityReport {
  double median_normal = 0.0;
  double mad_normal = 0.0;
  double median_anomaly = 0.0;
  double mad_anomaly = 0.0;
  std::int64_t infinite_excluded = 0;
};

/// State-space density 1 / (distance to the k-th neighbor), medians per
/// class. Zero k-distances are excluded and counted.
DensityReport state_space_density(const NeighborTable& table, std::span<const char> truth_rows,
                                  int k = 20);

}  // namespace unicorn
