#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "unicorn/errors.hpp"

namespace unicorn {

/// Seedable random stream with portable output.
///
/// mt19937_64 produces the same 64-bit stream on every conforming
/// implementation; the standard *distributions* do not, so the mappings to
/// uniform and normal variates are implemented here (53-bit mantissa uniforms,
/// Box-Muller normals). Identity string: "mt19937_64/boxmuller".
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static const char* name() { return "mt19937_64/boxmuller"; }

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Uniform integer on [lo, hi], inclusive. Unbiased via rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw ParameterError("uniform_int: empty range");
    const std::uint64_t range =
        static_cast<std::uint64_t>(hi - lo) + 1;  // never 0 for lo <= hi
    const std::uint64_t zone = (UINT64_MAX / range) * range;
    std::uint64_t v = engine_();
    while (v >= zone) v = engine_();
    return lo + static_cast<std::int64_t>(v % range);
  }

  /// Normal(mu, sigma) via Box-Muller; one spare variate is cached.
  double normal(double mu = 0.0, double sigma = 1.0) {
    if (has_spare_) {
      has_spare_ = false;
      return mu + sigma * spare_;
    }
    // u1 in (0, 1] so the log is finite
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return mu + sigma * r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace unicorn
