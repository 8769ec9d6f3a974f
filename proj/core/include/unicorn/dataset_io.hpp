#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unicorn/types.hpp"

namespace unicorn {

/// "<stem>.meta.json" next to a dataset CSV.
std::string meta_sidecar_path(const std::string& csv_path);

/// Writes "t,value,label" rows (full double precision, locale-independent,
/// newline-terminated) plus the JSON meta sidecar.
void write_dataset_csv(const LabeledDataset& dataset, const std::string& path);

/// Reads a dataset CSV and, when present, its meta sidecar.
LabeledDataset read_dataset_csv(const std::string& path);

/// Per-point detection output: "t,score,flag" rows. Rows beyond the scored
/// range carry "nan" scores.
void write_scores_csv(const ScoreSeries& scores, const DetectionMask& mask, double t0,
                      double dt, std::size_t n, const std::string& path);

/// Long-format evaluation report row.
struct ReportRow {
  std::string dataset;
  std::string detector;
  int k = 0;
  std::uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
};

/// "dataset,detector,k,seed,metric,value" rows.
void write_report_csv(const std::vector<ReportRow>& rows, const std::string& path);

/// Shortest round-trip decimal form of a double (locale-independent).
std::string format_double(double v);

}  // namespace unicorn
