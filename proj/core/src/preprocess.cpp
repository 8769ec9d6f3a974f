#include "unicorn/preprocess.hpp"

#include <fftw3.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include "unicorn/errors.hpp"

namespace unicorn {

Series log_difference(const Series& series) {
  validate(series);
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    if (!(series.values[i] > 0.0)) {
      throw DataError("log_difference requires positive values; value at index " +
                      std::to_string(i) + " is " + std::to_string(series.values[i]));
    }
  }
  Series out;
  out.dt = series.dt;
  out.t0 = series.t0 + series.dt;
  out.values.resize(series.values.size() - 1);
  for (std::size_t i = 0; i + 1 < series.values.size(); ++i) {
    out.values[i] = std::log(series.values[i + 1]) - std::log(series.values[i]);
  }
  return out;
}

Series first_difference(const Series& series) {
  validate(series);
  Series out;
  out.dt = series.dt;
  out.t0 = series.t0 + series.dt;
  out.values.resize(series.values.size() - 1);
  for (std::size_t i = 0; i + 1 < series.values.size(); ++i) {
    out.values[i] = series.values[i + 1] - series.values[i];
  }
  return out;
}

namespace {

// FFTW planning is not thread-safe
std::mutex fftw_plan_mutex;

double band_gain(double f, double lo, double hi) {
  const double w_lo = 0.05 * lo;
  const double w_hi = 0.05 * hi;
  if (f >= lo && f <= hi) return 1.0;
  if (f > lo - w_lo && f < lo) {
    return 0.5 * (1.0 - std::cos(3.14159265358979323846 * (f - (lo - w_lo)) / w_lo));
  }
  if (f > hi && f < hi + w_hi) {
    return 0.5 * (1.0 + std::cos(3.14159265358979323846 * (f - hi) / w_hi));
  }
  return 0.0;
}

}  // namespace

Series bandpass(const Series& series, double lo_hz, double hi_hz) {
  validate(series);
  const std::size_t n = series.values.size();
  const double fs = 1.0 / series.dt;
  const double nyquist = 0.5 * fs;
  if (!(lo_hz > 0.0) || !(hi_hz > lo_hz) || !(hi_hz < nyquist)) {
    throw ParameterError("bandpass requires 0 < lo < hi < Nyquist (" +
                         std::to_string(nyquist) + " Hz)");
  }

  std::vector<double> in(series.values);
  const std::size_t n_bins = n / 2 + 1;
  std::vector<fftw_complex> spec(n_bins);

  fftw_plan fwd;
  fftw_plan inv;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), spec.data(), FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec.data(), in.data(), FFTW_ESTIMATE);
  }
  fftw_execute(fwd);

  const double df = fs / static_cast<double>(n);
  for (std::size_t b = 0; b < n_bins; ++b) {
    const double gain = band_gain(static_cast<double>(b) * df, lo_hz, hi_hz);
    spec[b][0] *= gain;
    spec[b][1] *= gain;
  }

  fftw_execute(inv);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
  }

  Series out;
  out.dt = series.dt;
  out.t0 = series.t0;
  out.values.resize(n);
  const double norm = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = in[i] * norm;
  return out;
}

namespace {

double parse_double(const std::string& token, std::size_t line_no) {
  double v = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr == begin) {
    throw DataError("parse failure at line " + std::to_string(line_no) + ": '" + token + "'");
  }
  if (!std::isfinite(v)) {
    throw DataError("non-finite value at line " + std::to_string(line_no));
  }
  return v;
}

bool looks_numeric(const std::string& line) {
  for (char c : line) {
    if ((c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.' ) return true;
    if (c == ',' || c == ' ' || c == '\t' || c == '\r') continue;
    return false;
  }
  return false;
}

}  // namespace

Series load_series(const std::string& path, CsvFormat format,
                   std::optional<double> dt_override) {
  std::ifstream file(path);
  if (!file) throw DataError("cannot open '" + path + "'");

  Series out;
  std::vector<double> times;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(file, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first_content_line && !looks_numeric(line)) {
      first_content_line = false;
      continue;  // header row
    }
    first_content_line = false;
    if (format == CsvFormat::csv_single_column) {
      out.values.push_back(parse_double(line, line_no));
    } else {
      const auto comma = line.find(',');
      if (comma == std::string::npos) {
        throw DataError("expected 't,value' at line " + std::to_string(line_no));
      }
      times.push_back(parse_double(line.substr(0, comma), line_no));
      out.values.push_back(parse_double(line.substr(comma + 1), line_no));
    }
  }
  if (out.values.size() < 2) throw DataError("'" + path + "': need at least 2 samples");

  if (format == CsvFormat::csv_t_value) {
    const double dt = dt_override.value_or(times[1] - times[0]);
    if (!(dt > 0.0)) throw DataError("'" + path + "': nonpositive sampling period");
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
      if (std::abs(times[i + 1] - times[i] - dt) > 1e-9 * dt) {
        throw DataError("'" + path + "': non-uniform timestamps near line " +
                        std::to_string(i + 2));
      }
    }
    out.dt = dt;
    out.t0 = times[0];
  } else {
    out.dt = dt_override.value_or(1.0);
    out.t0 = 0.0;
  }
  validate(out);
  return out;
}

}  // namespace unicorn
