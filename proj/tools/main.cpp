// unicorn: unique-event detection in scalar time series.
//
// Subcommands: simulate (benchmark generators), detect (TOF/LOF scoring and
// thresholding), evaluate (metrics over labeled datasets), repro (the
// detection-performance tables and figures).
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "common.hpp"
#include "unicorn/dataset_io.hpp"
#include "unicorn/errors.hpp"
#include "unicorn/evaluation.hpp"
#include "unicorn/preprocess.hpp"
#include "unicorn/simulators.hpp"
#include "unicorn/version.hpp"

namespace unicorn::cli {

namespace {

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
  std::string generator;
  std::uint64_t seed = 0;
  std::string out;
  std::int64_t n = 2000;
  std::int64_t len_min = -1;  ///< -1: generator default
  std::int64_t len_max = -1;
  double r = 3.9;
  double slope = 0.001;
  double noise_sigma = 0.0;
  double mu = 0.001;
  double sigma = 0.01;
  double duration = 100.0;
  double tachy_len_min = 2.0;
  double tachy_len_max = 20.0;
};

int do_simulate(const SimulateOpts& o) {
  LabeledDataset ds;
  if (o.generator == "logistic-tent" || o.generator == "logistic-double-tent" ||
      o.generator == "logistic-linear") {
    LogisticOpts opts;
    opts.n = o.n;
    opts.r = o.r;
    opts.noise_sigma = o.noise_sigma;
    if (o.len_min > 0) opts.len_min = o.len_min;
    if (o.len_max > 0) opts.len_max = o.len_max;
    if (o.generator == "logistic-tent") {
      ds = gen_logistic_tent(o.seed, opts);
    } else if (o.generator == "logistic-double-tent") {
      ds = gen_logistic_double_tent(o.seed, opts);
    } else {
      ds = gen_logistic_linear(o.seed, opts, o.slope);
    }
  } else if (o.generator == "randwalk-linear") {
    RandwalkOpts opts;
    opts.n = o.n;
    opts.mu = o.mu;
    opts.sigma = o.sigma;
    if (o.len_min > 0) opts.len_min = o.len_min;
    if (o.len_max > 0) opts.len_max = o.len_max;
    ds = gen_randwalk_linear(o.seed, opts);
  } else if (o.generator == "ecg") {
    EcgOpts opts;
    opts.duration = o.duration;
    opts.tachy_len_min = o.tachy_len_min;
    opts.tachy_len_max = o.tachy_len_max;
    ds = gen_ecg(o.seed, opts);
  } else {
    throw ParameterError("unknown generator '" + o.generator + "'");
  }

  write_dataset_csv(ds, o.out);
  std::printf("wrote %s (%zu samples, %zu anomaly span(s))\n", o.out.c_str(),
              ds.series.values.size(), ds.meta.spans.size());
  return kExitOk;
}

// ------------------------------------------------------------------ detect

struct DetectOpts {
  std::string input;
  std::string format = "auto";
  std::string out;
  std::string config_path;
  double dt_override = 0.0;
  double tau_seconds = 0.0;
  DetectorCli detector;
};

std::string sniff_format(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::string first;
  std::getline(in, first);
  if (first.rfind("t,value,label", 0) == 0) return "dataset";
  std::string probe = first;
  if (probe.rfind("t,", 0) == 0) return "t-value";
  return probe.find(',') != std::string::npos ? "t-value" : "single";
}

int do_detect(DetectOpts& o) {
  o.detector.finalize(load_config_file(o.config_path));

  std::string format = o.format == "auto" ? sniff_format(o.input) : o.format;
  Series series;
  std::vector<char> truth;
  if (format == "dataset") {
    LabeledDataset ds = read_dataset_csv(o.input);
    series = std::move(ds.series);
    truth = std::move(ds.anomaly_mask);
  } else if (format == "t-value") {
    series = load_series(o.input, CsvFormat::csv_t_value,
                         o.dt_override > 0.0 ? std::optional<double>(o.dt_override)
                                             : std::nullopt);
  } else if (format == "single") {
    series = load_series(o.input, CsvFormat::csv_single_column,
                         o.dt_override > 0.0 ? std::optional<double>(o.dt_override)
                                             : std::nullopt);
  } else {
    throw ParameterError("unknown input format '" + format + "'");
  }
  if (o.dt_override > 0.0) series.dt = o.dt_override;

  if (o.tau_seconds > 0.0) {
    const auto tau = static_cast<int>(std::llround(o.tau_seconds / series.dt));
    if (tau < 1) {
      throw ParameterError("--tau-seconds " + std::to_string(o.tau_seconds) +
                           " is below one sample (dt = " + std::to_string(series.dt) + ")");
    }
    o.detector.config.embed_delay = tau;
  }

  const PipelineResult r =
      run_pipeline(series, truth.empty() ? nullptr : &truth, o.detector.config);

  const double t0 = series.t0 + static_cast<double>(r.index_offset) * series.dt;
  write_scores_csv(r.scores, r.mask, t0, series.dt, r.aligned_n, o.out);

  json sidecar;
  sidecar["version"] = kVersion;
  sidecar["config"] = o.detector.resolved();
  sidecar["input"] = o.input;
  sidecar["n_input"] = series.size();
  sidecar["n_scored"] = r.scores.scores.size();
  sidecar["index_offset"] = r.index_offset;
  if (o.detector.config.method == Detector::tof) sidecar["theta_seconds"] = r.theta;
  write_json(sidecar, config_sidecar_path(o.out));

  if (o.detector.config.method == Detector::tof) {
    std::printf("theta = %.9g s (M = %.9g s, k = %d)\n", r.theta,
                o.detector.config.max_event_len, o.detector.config.k);
  }
  std::size_t flagged = 0;
  for (char f : r.mask.flags) flagged += f != 0;
  std::printf("wrote %s (%zu points, %zu flagged)\n", o.out.c_str(), r.aligned_n, flagged);
  return kExitOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOpts {
  std::vector<std::string> inputs;
  std::string out_prefix = "report";
  std::string config_path;
  std::string k_sweep_range;  ///< "LO:HI"
  bool iei = false;
  int jobs = 1;
  DetectorCli detector;
};

int do_evaluate(EvaluateOpts& o) {
  o.detector.finalize(load_config_file(o.config_path));
  if (o.inputs.empty()) throw ParameterError("evaluate needs at least one --input dataset");

  std::vector<LabeledDataset> family;
  family.reserve(o.inputs.size());
  for (const std::string& path : o.inputs) family.push_back(read_dataset_csv(path));

  const std::string detector_name = o.detector.method;
  std::vector<ReportRow> rows;
  std::vector<double> aucs, f1s, precisions, recalls;

  for (std::size_t i = 0; i < family.size(); ++i) {
    const LabeledDataset& ds = family[i];
    const double auc = pipeline_auc(ds, o.detector.config);
    const EvalReport prf = pipeline_prf(ds, o.detector.config);
    aucs.push_back(auc);
    f1s.push_back(prf.f1);
    precisions.push_back(prf.precision);
    recalls.push_back(prf.recall);
    const std::string name = std::filesystem::path(o.inputs[i]).filename().string();
    const std::pair<const char*, double> metrics[] = {{"auc", auc},
                                                      {"f1", prf.f1},
                                                      {"precision", prf.precision},
                                                      {"recall", prf.recall}};
    for (const auto& [metric, value] : metrics) {
      rows.push_back({name, detector_name, o.detector.config.k, ds.meta.seed, metric, value});
    }
  }

  json summary;
  summary["version"] = kVersion;
  summary["config"] = o.detector.resolved();
  summary["realizations"] = family.size();
  summary["auc"] = {{"median", median(aucs)}, {"mad", median_abs_deviation(aucs)}};
  summary["f1"] = {{"median", median(f1s)}, {"mad", median_abs_deviation(f1s)}};
  summary["precision"] = {{"median", median(precisions)},
                          {"mad", median_abs_deviation(precisions)}};
  summary["recall"] = {{"median", median(recalls)}, {"mad", median_abs_deviation(recalls)}};

  if (!o.k_sweep_range.empty()) {
    const auto colon = o.k_sweep_range.find(':');
    if (colon == std::string::npos) throw ParameterError("--k-sweep expects 'LO:HI'");
    const int lo = std::stoi(o.k_sweep_range.substr(0, colon));
    const int hi = std::stoi(o.k_sweep_range.substr(colon + 1));
    const auto sweep = k_sweep(family, o.detector.config, lo, hi, o.jobs);
    for (const KSweepEntry& e : sweep) {
      rows.push_back({"family", detector_name, e.k, 0, "median_auc", e.median_auc});
      rows.push_back({"family", detector_name, e.k, 0, "mad_auc", e.mad_auc});
    }
  }

  if (o.iei) {
    DetectorConfig tof_cfg = o.detector.config;
    tof_cfg.method = Detector::tof;
    DetectorConfig lof_cfg = o.detector.config;
    lof_cfg.method = Detector::lof;
    lof_cfg.k = 28;
    const IeiAnalysis a = iei_analysis(family, tof_cfg, lof_cfg, o.jobs);
    for (std::size_t i = 0; i < family.size(); ++i) {
      rows.push_back({"family", "tof", tof_cfg.k, family[i].meta.seed, "iei", a.tof[i].iei});
      rows.push_back({"family", "tof", tof_cfg.k, family[i].meta.seed, "auc", a.tof[i].auc});
      rows.push_back({"family", "lof", lof_cfg.k, family[i].meta.seed, "auc", a.lof[i].auc});
    }
    summary["iei"] = {{"spearman_tof", a.spearman_tof}, {"spearman_lof", a.spearman_lof}};
  }

  const std::string csv_path = o.out_prefix + ".csv";
  write_report_csv(rows, csv_path);
  write_json(summary, o.out_prefix + ".json");
  std::printf("wrote %s and %s.json (auc median %.4f)\n", csv_path.c_str(),
              o.out_prefix.c_str(), median(aucs));
  return kExitOk;
}

}  // namespace

}  // namespace unicorn::cli

int main(int argc, char** argv) {
  using namespace unicorn::cli;

  CLI::App app{"unicorn: unique-event detection via the Temporal Outlier Factor"};
  app.set_version_flag("--version", unicorn::kVersion);
  app.require_subcommand(1);

  SimulateOpts sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Generate a labeled benchmark dataset");
  simulate
      ->add_option("generator", sim.generator,
                   "logistic-tent | logistic-linear | randwalk-linear | ecg | "
                   "logistic-double-tent")
      ->required();
  simulate->add_option("--seed", sim.seed, "Random seed")->required();
  simulate->add_option("-o,--out", sim.out, "Output CSV path")->required();
  simulate->add_option("--n", sim.n, "Series length in samples");
  simulate->add_option("--len-min", sim.len_min, "Minimum anomaly length (samples)");
  simulate->add_option("--len-max", sim.len_max, "Maximum anomaly length (samples)");
  simulate->add_option("--r", sim.r, "Logistic map parameter");
  simulate->add_option("--slope", sim.slope, "Linear anomaly slope magnitude");
  simulate->add_option("--noise-sigma", sim.noise_sigma, "Observation noise sigma");
  simulate->add_option("--mu", sim.mu, "Random walk increment mean");
  simulate->add_option("--sigma", sim.sigma, "Random walk increment sigma");
  simulate->add_option("--duration", sim.duration, "ECG duration in seconds");
  simulate->add_option("--tachy-len-min", sim.tachy_len_min, "ECG tachy span min (s)");
  simulate->add_option("--tachy-len-max", sim.tachy_len_max, "ECG tachy span max (s)");

  DetectOpts det;
  CLI::App* detect = app.add_subcommand("detect", "Score a series and flag unique events");
  detect->add_option("-i,--input", det.input, "Input CSV")->required();
  detect->add_option("--format", det.format, "auto | single | t-value | dataset")
      ->check(CLI::IsMember({"auto", "single", "t-value", "dataset"}));
  detect->add_option("--dt", det.dt_override, "Sampling period override (seconds)");
  detect->add_option("-o,--out", det.out, "Output scores CSV")->required();
  detect->add_option("--config", det.config_path, "JSON config file");
  det.detector.add_options(*detect);
  detect->add_option("--tau-seconds", det.tau_seconds, "Embedding delay in seconds (rounded to samples)")
      ->excludes(det.detector.opt_tau);

  EvaluateOpts eval;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score detections against ground truth");
  evaluate->add_option("-i,--input", eval.inputs, "Labeled dataset CSVs")->required();
  evaluate->add_option("-o,--out", eval.out_prefix, "Report path prefix");
  evaluate->add_option("--config", eval.config_path, "JSON config file");
  evaluate->add_option("--k-sweep", eval.k_sweep_range, "Neighborhood sweep 'LO:HI'");
  evaluate->add_flag("--iei", eval.iei, "Inter-event-interval analysis (double-tent data)");
  evaluate->add_option("-j,--jobs", eval.jobs, "Worker threads across realizations");
  eval.detector.add_options(*evaluate);

  ReproOptions rep;
  CLI::App* repro = app.add_subcommand("repro", "Reproduce the detection-performance tables");
  repro->add_option("target", rep.which, "table1 | table2 | table3 | fig3 | fig4")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "table3", "fig3", "fig4"}));
  repro->add_option("--realizations", rep.realizations, "Realizations per dataset family");
  repro->add_option("--k-max", rep.k_max, "Largest neighborhood in sweeps");
  repro->add_option("--seed-base", rep.seed_base, "First seed of the family");
  repro->add_option("-o,--out", rep.out_dir, "Output directory");
  repro->add_option("-j,--jobs", rep.jobs, "Worker threads across realizations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParameter;
  }

  try {
    if (simulate->parsed()) return do_simulate(sim);
    if (detect->parsed()) return do_detect(det);
    if (evaluate->parsed()) return do_evaluate(eval);
    if (repro->parsed()) return run_repro(rep);
  } catch (const unicorn::ParameterError& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return kExitParameter;
  } catch (const unicorn::NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return kExitNumeric;
  } catch (const unicorn::DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
  return kExitOk;
}
