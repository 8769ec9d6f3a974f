#include "unicorn/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "unicorn/embedding.hpp"
#include "unicorn/errors.hpp"
#include "unicorn/lof.hpp"
#include "unicorn/neighbors.hpp"
#include "unicorn/preprocess.hpp"
#include "unicorn/tof.hpp"

namespace unicorn {

EvalReport precision_recall_f1(std::span<const char> flags, std::span<const char> truth) {
  if (flags.size() != truth.size()) {
    throw ParameterError("precision_recall_f1: mask and truth lengths differ");
  }
  EvalReport report;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    const bool f = flags[i] != 0;
    const bool t = truth[i] != 0;
    if (f && t) ++report.counts.tp;
    else if (f && !t) ++report.counts.fp;
    else if (!f && t) ++report.counts.fn;
    else ++report.counts.tn;
  }
  const auto tp = static_cast<double>(report.counts.tp);
  if (report.counts.tp + report.counts.fp > 0) {
    report.precision = tp / static_cast<double>(report.counts.tp + report.counts.fp);
  } else {
    report.precision_degenerate = true;
  }
  if (report.counts.tp + report.counts.fn > 0) {
    report.recall = tp / static_cast<double>(report.counts.tp + report.counts.fn);
  } else {
    report.recall_degenerate = true;
  }
  if (report.precision + report.recall > 0.0) {
    report.f1 = 2.0 * report.precision * report.recall / (report.precision + report.recall);
  }
  return report;
}

double roc_auc(const ScoreSeries& scores, std::span<const char> truth) {
  const std::size_t n = scores.scores.size();
  if (truth.size() != n) throw ParameterError("roc_auc: score and truth lengths differ");

  std::size_t n_pos = 0;
  for (char t : truth) n_pos += t != 0;
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw DegenerateInputError("roc_auc undefined for single-class truth");
  }

  // orient so that higher means more anomalous
  std::vector<double> oriented(n);
  const double sign = scores.orientation == ScoreOrientation::low_is_anomalous ? -1.0 : 1.0;
  for (std::size_t i = 0; i < n; ++i) oriented[i] = sign * scores.scores[i];

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return oriented[a] < oriented[b]; });

  double pos_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && oriented[order[j + 1]] == oriented[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t r = i; r <= j; ++r) {
      if (truth[order[r]] != 0) pos_rank_sum += midrank;
    }
    i = j + 1;
  }
  const double np = static_cast<double>(n_pos);
  const double nn = static_cast<double>(n_neg);
  return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

double median(std::vector<double> values) {
  if (values.empty()) throw ParameterError("median of empty range");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double m = values[mid];
  if (values.size() % 2 == 0) {
    const double lower = *std::max_element(values.begin(), values.begin() + mid);
    m = 0.5 * (m + lower);
  }
  return m;
}

double median_abs_deviation(std::span<const double> values) {
  const double m = median(std::vector<double>(values.begin(), values.end()));
  std::vector<double> dev(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) dev[i] = std::abs(values[i] - m);
  return median(std::move(dev));
}

namespace {

std::vector<double> midranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t r = i; r <= j; ++r) ranks[order[r]] = midrank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ParameterError("spearman: length mismatch");
  if (a.size() < 2) throw ParameterError("spearman needs at least 2 points");
  const std::vector<double> ra = midranks(a);
  const std::vector<double> rb = midranks(b);
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / static_cast<double>(ra.size());
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / static_cast<double>(rb.size());
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

// ---------------------------------------------------------------------------
// pipelines
// ---------------------------------------------------------------------------

namespace {

struct Prepared {
  Series series;
  std::vector<char> truth;
  std::int64_t offset = 0;
};

Prepared prepare(const Series& input, const std::vector<char>* truth,
                 const DetectorConfig& config) {
  Prepared p;
  p.series = input;
  if (truth != nullptr) p.truth = *truth;

  if (config.preprocess != PreprocessKind::none) {
    p.series = config.preprocess == PreprocessKind::log_diff ? log_difference(p.series)
                                                             : first_difference(p.series);
    p.offset = 1;
    if (!p.truth.empty()) p.truth.erase(p.truth.begin());
  }
  if (config.bandpass_lo > 0.0 && config.bandpass_hi > 0.0) {
    p.series = bandpass(p.series, config.bandpass_lo, config.bandpass_hi);
  }
  return p;
}

}  // namespace

PipelineResult run_pipeline(const Series& series, const std::vector<char>* truth,
                            const DetectorConfig& config) {
  Prepared p = prepare(series, truth, config);
  const EmbeddedSeries embedded =
      embed(p.series, EmbeddingParams{config.embed_dim, config.embed_delay});
  const SpatialIndex index(embedded);
  const NeighborTable table = knn_all(index, config.k);

  PipelineResult result;
  result.aligned_n = p.series.size();
  result.index_offset = p.offset;
  result.truth = std::move(p.truth);

  if (config.method == Detector::tof) {
    result.scores = tof_score(table, embedded.time_index, p.series.dt, config.q);
    result.theta = threshold_from_event_length(config.max_event_len, config.k, p.series.dt);
    const int pad = config.pad_w >= 0 ? config.pad_w : config.k / 2;
    result.mask = detect(result.scores, result.theta, pad, result.aligned_n);
  } else {
    result.scores = lof_score(table, embedded.time_index, p.series.dt);
    result.mask = lof_detect(result.scores, config.top_fraction, result.aligned_n);
  }
  return result;
}

namespace {

double auc_of(const PipelineResult& r) {
  if (r.truth.empty()) throw ParameterError("AUC requires ground truth");
  const std::span<const char> rows(r.truth.data(), r.scores.scores.size());
  return roc_auc(r.scores, rows);
}

}  // namespace

double pipeline_auc(const LabeledDataset& dataset, const DetectorConfig& config) {
  return auc_of(run_pipeline(dataset.series, &dataset.anomaly_mask, config));
}

EvalReport pipeline_prf(const LabeledDataset& dataset, const DetectorConfig& config) {
  const PipelineResult r = run_pipeline(dataset.series, &dataset.anomaly_mask, config);
  return precision_recall_f1(r.mask.flags, r.truth);
}

// ---------------------------------------------------------------------------
// harnesses
// ---------------------------------------------------------------------------

namespace {

/// Runs fn(i) for i in [0, count) on `jobs` threads; exceptions surface on
/// the caller thread.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace

std::vector<KSweepEntry> k_sweep(const std::vector<LabeledDataset>& family,
                                 const DetectorConfig& base, int k_lo, int k_hi, int jobs) {
  if (family.empty()) throw ParameterError("k_sweep needs at least one realization");
  if (k_lo < 1 || k_hi < k_lo) throw ParameterError("k_sweep: bad k range");

  const std::size_t n_real = family.size();
  const std::size_t n_k = static_cast<std::size_t>(k_hi - k_lo + 1);
  std::vector<std::vector<double>> auc(n_real, std::vector<double>(n_k));

  parallel_for(n_real, jobs, [&](std::size_t r) {
    const LabeledDataset& ds = family[r];
    Prepared p = prepare(ds.series, &ds.anomaly_mask, base);
    const EmbeddedSeries embedded =
        embed(p.series, EmbeddingParams{base.embed_dim, base.embed_delay});
    const SpatialIndex index(embedded);
    const NeighborTable table = knn_all(index, k_hi);
    const std::span<const char> rows(p.truth.data(), embedded.size());
    for (int k = k_lo; k <= k_hi; ++k) {
      const ScoreSeries scores =
          base.method == Detector::tof
              ? tof_score(table, embedded.time_index, p.series.dt, base.q, k)
              : lof_score(table, embedded.time_index, p.series.dt, k);
      auc[r][static_cast<std::size_t>(k - k_lo)] = roc_auc(scores, rows);
    }
  });

  std::vector<KSweepEntry> out(n_k);
  for (std::size_t ki = 0; ki < n_k; ++ki) {
    std::vector<double> per_real(n_real);
    for (std::size_t r = 0; r < n_real; ++r) per_real[r] = auc[r][ki];
    out[ki].k = k_lo + static_cast<int>(ki);
    out[ki].median_auc = median(per_real);
    out[ki].mad_auc = median_abs_deviation(per_real);
  }
  return out;
}

IeiAnalysis iei_analysis(const std::vector<LabeledDataset>& family,
                         const DetectorConfig& tof_config, const DetectorConfig& lof_config,
                         int jobs) {
  if (family.empty()) throw ParameterError("iei_analysis needs at least one realization");
  IeiAnalysis out;
  out.tof.resize(family.size());
  out.lof.resize(family.size());

  parallel_for(family.size(), jobs, [&](std::size_t r) {
    const LabeledDataset& ds = family[r];
    const auto it = ds.meta.params.find("iei_samples");
    if (it == ds.meta.params.end()) {
      throw DataError("iei_analysis: dataset lacks iei_samples metadata");
    }
    out.tof[r] = {it->second, pipeline_auc(ds, tof_config)};
    out.lof[r] = {it->second, pipeline_auc(ds, lof_config)};
  });

  std::vector<double> iei(family.size());
  std::vector<double> auc_tof(family.size());
  std::vector<double> auc_lof(family.size());
  for (std::size_t r = 0; r < family.size(); ++r) {
    iei[r] = out.tof[r].iei;
    auc_tof[r] = out.tof[r].auc;
    auc_lof[r] = out.lof[r].auc;
  }
  out.spearman_tof = spearman(iei, auc_tof);
  out.spearman_lof = spearman(iei, auc_lof);
  return out;
}

DensityReport state_space_density(const NeighborTable& table, std::span<const char> truth_rows,
                                  int k) {
  if (k < 1 || k > table.k) throw ParameterError("state_space_density: k exceeds table width");
  if (truth_rows.size() != table.rows) {
    throw ParameterError("state_space_density: truth length does not match table rows");
  }
  std::vector<double> normal;
  std::vector<double> anomaly;
  DensityReport report;
  for (std::size_t i = 0; i < table.rows; ++i) {
    const double d = table.row_distances(i)[static_cast<std::size_t>(k - 1)];
    if (d == 0.0) {
      ++report.infinite_excluded;
      continue;
    }
    (truth_rows[i] != 0 ? anomaly : normal).push_back(1.0 / d);
  }
  if (normal.empty() || anomaly.empty()) {
    throw DegenerateInputError("state_space_density: a class has no finite densities");
  }
  report.median_normal = median(normal);
  report.mad_normal = median_abs_deviation(normal);
  report.median_anomaly = median(anomaly);
  report.mad_anomaly = median_abs_deviation(anomaly);
  return report;
}

namespace {

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs < 1) jobs = 1;
  if (jobs == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(jobs));
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

}  // namespace unicorn
