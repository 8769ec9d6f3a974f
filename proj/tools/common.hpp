#pragma once

#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "unicorn/evaluation.hpp"
#include "unicorn/types.hpp"

namespace unicorn::cli {

using nlohmann::json;

// process exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitParameter = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;

/// Detector options as they appear on the command line, with CLI11 option
/// handles kept so config-file values only fill flags the user did not pass
/// (precedence: flags > config file > defaults).
struct DetectorCli {
  DetectorConfig config;
  std::string method = "tof";
  std::string preprocess = "none";
  std::string bandpass;  ///< "LO:HI" in Hz

  CLI::Option* opt_method = nullptr;
  CLI::Option* opt_dim = nullptr;
  CLI::Option* opt_tau = nullptr;
  CLI::Option* opt_k = nullptr;
  CLI::Option* opt_q = nullptr;
  CLI::Option* opt_event_len = nullptr;
  CLI::Option* opt_pad = nullptr;
  CLI::Option* opt_top = nullptr;
  CLI::Option* opt_preprocess = nullptr;
  CLI::Option* opt_bandpass = nullptr;

  void add_options(CLI::App& app);
  /// Fills unset flags from a JSON config object, then resolves enums.
  void finalize(const json& file_config);
  json resolved() const;
};

json load_config_file(const std::string& path);

/// Pretty JSON with a trailing newline.
void write_json(const json& j, const std::string& path);

/// "<stem>.config.json" next to an output file.
std::string config_sidecar_path(const std::string& out_path);

struct ReproOptions {
  std::string which;  ///< table1|table2|table3|fig3|fig4
  int realizations = 100;
  int k_max = 100;
  std::uint64_t seed_base = 1;
  std::string out_dir = ".";
  int jobs = 1;
};

int run_repro(const ReproOptions& opts);

}  // namespace unicorn::cli
