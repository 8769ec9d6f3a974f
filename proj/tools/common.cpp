#include "common.hpp"

#include <filesystem>
#include <fstream>

#include "unicorn/errors.hpp"
#include "unicorn/version.hpp"

namespace unicorn::cli {

void DetectorCli::add_options(CLI::App& app) {
  opt_method = app.add_option("--method", method, "Detector: tof or lof")
                   ->check(CLI::IsMember({"tof", "lof"}));
  opt_dim = app.add_option("-E,--dim", config.embed_dim, "Embedding dimension");
  opt_tau = app.add_option("-t,--tau", config.embed_delay, "Embedding delay in samples");
  opt_k = app.add_option("-k,--neighbors", config.k, "Neighborhood size");
  opt_q = app.add_option("-q,--order", config.q, "TOF exponent q");
  opt_event_len =
      app.add_option("-M,--max-event-len", config.max_event_len,
                     "Maximum detectable event length in seconds (TOF threshold)");
  opt_pad = app.add_option("--pad-w", config.pad_w,
                           "Detection padding in samples; -1 means floor(k/2)");
  opt_top = app.add_option("--top-fraction", config.top_fraction,
                           "LOF detection percentile in (0, 1]");
  opt_preprocess = app.add_option("--preprocess", preprocess, "none, first-diff or log-diff")
                       ->check(CLI::IsMember({"none", "first-diff", "log-diff"}));
  opt_bandpass =
      app.add_option("--bandpass", bandpass, "Zero-phase bandpass 'LO:HI' in Hz");
}

namespace {

void fill_from(const json& cfg, const char* key, CLI::Option* opt, double& target) {
  if (opt != nullptr && opt->count() == 0 && cfg.contains(key)) target = cfg[key].get<double>();
}

void fill_from(const json& cfg, const char* key, CLI::Option* opt, int& target) {
  if (opt != nullptr && opt->count() == 0 && cfg.contains(key)) target = cfg[key].get<int>();
}

void fill_from(const json& cfg, const char* key, CLI::Option* opt, std::string& target) {
  if (opt != nullptr && opt->count() == 0 && cfg.contains(key)) {
    target = cfg[key].get<std::string>();
  }
}

}  // namespace

void DetectorCli::finalize(const json& file_config) {
  fill_from(file_config, "method", opt_method, method);
  fill_from(file_config, "dim", opt_dim, config.embed_dim);
  fill_from(file_config, "tau", opt_tau, config.embed_delay);
  fill_from(file_config, "k", opt_k, config.k);
  fill_from(file_config, "q", opt_q, config.q);
  fill_from(file_config, "max_event_len", opt_event_len, config.max_event_len);
  fill_from(file_config, "pad_w", opt_pad, config.pad_w);
  fill_from(file_config, "top_fraction", opt_top, config.top_fraction);
  fill_from(file_config, "preprocess", opt_preprocess, preprocess);
  fill_from(file_config, "bandpass", opt_bandpass, bandpass);

  if (method == "tof") {
    config.method = Detector::tof;
  } else if (method == "lof") {
    config.method = Detector::lof;
  } else {
    throw ParameterError("unknown method '" + method + "'");
  }

  if (preprocess == "none") {
    config.preprocess = PreprocessKind::none;
  } else if (preprocess == "first-diff") {
    config.preprocess = PreprocessKind::first_diff;
  } else if (preprocess == "log-diff") {
    config.preprocess = PreprocessKind::log_diff;
  } else {
    throw ParameterError("unknown preprocess '" + preprocess + "'");
  }

  if (!bandpass.empty()) {
    const auto colon = bandpass.find(':');
    if (colon == std::string::npos) {
      throw ParameterError("--bandpass expects 'LO:HI' in Hz");
    }
    try {
      config.bandpass_lo = std::stod(bandpass.substr(0, colon));
      config.bandpass_hi = std::stod(bandpass.substr(colon + 1));
    } catch (const std::exception&) {
      throw ParameterError("--bandpass expects numeric 'LO:HI'");
    }
  }
}

json DetectorCli::resolved() const {
  json j;
  j["method"] = method;
  j["dim"] = config.embed_dim;
  j["tau"] = config.embed_delay;
  j["k"] = config.k;
  j["q"] = config.q;
  j["max_event_len"] = config.max_event_len;
  j["pad_w"] = config.pad_w;
  j["top_fraction"] = config.top_fraction;
  j["preprocess"] = preprocess;
  if (!bandpass.empty()) j["bandpass"] = bandpass;
  return j;
}

json load_config_file(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file '" + path + "'");
  try {
    return json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw DataError("config file '" + path + "': " + e.what());
  }
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

std::string config_sidecar_path(const std::string& out_path) {
  std::filesystem::path p(out_path);
  p.replace_extension(".config.json");
  return p.string();
}

}  // namespace unicorn::cli
