#include "unicorn/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "unicorn/errors.hpp"
#include "unicorn/version.hpp"

namespace unicorn {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string meta_sidecar_path(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".meta.json");
  return p.string();
}

void write_dataset_csv(const LabeledDataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "t,value,label\n";
  for (std::size_t i = 0; i < dataset.series.values.size(); ++i) {
    const double t = dataset.series.t0 + static_cast<double>(i) * dataset.series.dt;
    out << format_double(t) << ',' << format_double(dataset.series.values[i]) << ','
        << (i < dataset.anomaly_mask.size() && dataset.anomaly_mask[i] ? '1' : '0') << '\n';
  }
  if (!out) throw DataError("write failure on '" + path + "'");

  nlohmann::json meta;
  meta["version"] = kVersion;
  meta["generator"] = dataset.meta.generator;
  meta["seed"] = dataset.meta.seed;
  meta["rng"] = dataset.meta.rng;
  meta["n"] = dataset.series.values.size();
  meta["dt"] = dataset.series.dt;
  meta["t0"] = dataset.series.t0;
  meta["spans"] = nlohmann::json::array();
  for (const AnomalySpan& s : dataset.meta.spans) {
    meta["spans"].push_back({{"start", s.start}, {"length", s.length}});
  }
  meta["params"] = dataset.meta.params;

  std::ofstream side(meta_sidecar_path(path), std::ios::binary);
  if (!side) throw DataError("cannot write '" + meta_sidecar_path(path) + "'");
  side << meta.dump(2) << '\n';
}

namespace {

double parse_field(const std::string& token, std::size_t line_no, const std::string& path) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr == token.data()) {
    throw DataError("'" + path + "': parse failure at line " + std::to_string(line_no));
  }
  return v;
}

}  // namespace

LabeledDataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  LabeledDataset ds;
  std::vector<double> times;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("t,", 0) == 0) continue;  // header
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw DataError("'" + path + "': expected 't,value,label' at line " +
                      std::to_string(line_no));
    }
    times.push_back(parse_field(line.substr(0, c1), line_no, path));
    ds.series.values.push_back(parse_field(line.substr(c1 + 1, c2 - c1 - 1), line_no, path));
    ds.anomaly_mask.push_back(parse_field(line.substr(c2 + 1), line_no, path) != 0.0 ? 1 : 0);
  }
  if (ds.series.values.size() < 2) throw DataError("'" + path + "': need at least 2 samples");
  ds.series.t0 = times[0];
  ds.series.dt = times.size() > 1 ? times[1] - times[0] : 1.0;

  const std::string meta_path = meta_sidecar_path(path);
  std::ifstream side(meta_path);
  if (side) {
    nlohmann::json meta = nlohmann::json::parse(side, nullptr, true, true);
    ds.meta.generator = meta.value("generator", "");
    ds.meta.seed = meta.value("seed", std::uint64_t{0});
    ds.meta.rng = meta.value("rng", "");
    if (meta.contains("dt")) ds.series.dt = meta["dt"].get<double>();
    if (meta.contains("spans")) {
      for (const auto& s : meta["spans"]) {
        ds.meta.spans.push_back({s.value("start", std::int64_t{0}),
                                 s.value("length", std::int64_t{0})});
      }
    }
    if (meta.contains("params")) {
      for (const auto& [key, value] : meta["params"].items()) {
        if (value.is_number()) ds.meta.params[key] = value.get<double>();
      }
    }
  }
  return ds;
}

void write_scores_csv(const ScoreSeries& scores, const DetectionMask& mask, double t0,
                      double dt, std::size_t n, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "t,score,flag\n";
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t0 + static_cast<double>(i) * dt;
    out << format_double(t) << ',';
    if (i < scores.scores.size()) {
      out << format_double(scores.scores[i]);
    } else {
      out << "nan";
    }
    out << ',' << (i < mask.flags.size() && mask.flags[i] ? '1' : '0') << '\n';
  }
  if (!out) throw DataError("write failure on '" + path + "'");
}

void write_report_csv(const std::vector<ReportRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "dataset,detector,k,seed,metric,value\n";
  for (const ReportRow& r : rows) {
    out << r.dataset << ',' << r.detector << ',' << r.k << ',' << r.seed << ',' << r.metric
        << ',' << format_double(r.value) << '\n';
  }
  if (!out) throw DataError("write failure on '" + path + "'");
}

}  // namespace unicorn
