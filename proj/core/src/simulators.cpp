#include "unicorn/simulators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "unicorn/errors.hpp"
#include "unicorn/rng.hpp"

namespace unicorn {

namespace {

constexpr int kMaxTrajectoryRetries = 100;
constexpr int kMaxPlacementAttempts = 1000;

AnomalySpan draw_span(Rng& rng, std::int64_t n, std::int64_t len_min, std::int64_t len_max) {
  if (len_min < 1 || len_max < len_min || len_max >= n) {
    throw ParameterError("anomaly length range must satisfy 1 <= len_min <= len_max < N");
  }
  AnomalySpan span;
  span.length = rng.uniform_int(len_min, len_max);
  span.start = rng.uniform_int(0, n - span.length);
  return span;
}

void mark(std::vector<char>& mask, const AnomalySpan& span) {
  std::fill(mask.begin() + span.start, mask.begin() + span.start + span.length, char(1));
}

/// Iterates the logistic background with tent-map updates on transitions
/// into masked samples. Retries from a fresh x0 if the trajectory escapes
/// [0, 1]; reflects stray tent iterates back into the interval.
struct LogisticRun {
  std::vector<double> values;
  std::int64_t reflections = 0;
};

LogisticRun run_logistic_tent(Rng& rng, std::int64_t n, double r,
                              const std::vector<char>& mask) {
  for (int attempt = 0; attempt < kMaxTrajectoryRetries; ++attempt) {
    LogisticRun run;
    run.values.resize(static_cast<std::size_t>(n));
    run.values[0] = rng.uniform01();
    bool escaped = false;
    for (std::int64_t t = 0; t + 1 < n; ++t) {
      const double x = run.values[static_cast<std::size_t>(t)];
      double next;
      if (mask[static_cast<std::size_t>(t + 1)]) {
        next = tent_step(x);
        if (next > 1.0) {
          next = 2.0 - next;
          ++run.reflections;
        } else if (next < 0.0) {
          next = -next;
          ++run.reflections;
        }
      } else {
        next = logistic_step(r, x);
      }
      if (!(next >= 0.0 && next <= 1.0)) {
        escaped = true;
        break;
      }
      run.values[static_cast<std::size_t>(t + 1)] = next;
    }
    if (!escaped) return run;
  }
  throw NumericError("logistic trajectory escaped [0,1] in " +
                     std::to_string(kMaxTrajectoryRetries) + " attempts");
}

}  // namespace

LabeledDataset gen_logistic_tent(std::uint64_t seed, const LogisticOpts& opts) {
  Rng rng(seed);
  LabeledDataset ds;
  ds.anomaly_mask.assign(static_cast<std::size_t>(opts.n), 0);
  const AnomalySpan span = draw_span(rng, opts.n, opts.len_min, opts.len_max);
  mark(ds.anomaly_mask, span);

  LogisticRun run = run_logistic_tent(rng, opts.n, opts.r, ds.anomaly_mask);
  ds.series.values = std::move(run.values);
  ds.series.dt = 1.0;
  if (opts.noise_sigma > 0.0) {
    for (double& v : ds.series.values) v += rng.normal(0.0, opts.noise_sigma);
  }

  ds.meta.generator = "logistic-tent";
  ds.meta.seed = seed;
  ds.meta.rng = Rng::name();
  ds.meta.spans = {span};
  ds.meta.params = {{"n", static_cast<double>(opts.n)},
                    {"r", opts.r},
                    {"len_min", static_cast<double>(opts.len_min)},
                    {"len_max", static_cast<double>(opts.len_max)},
                    {"noise_sigma", opts.noise_sigma},
                    {"tent_reflections", static_cast<double>(run.reflections)}};
  return ds;
}

LabeledDataset gen_logistic_linear(std::uint64_t seed, const LogisticOpts& opts, double slope) {
  if (!(slope > 0.0)) throw ParameterError("slope must be positive");
  Rng rng(seed);
  LabeledDataset ds;
  ds.anomaly_mask.assign(static_cast<std::size_t>(opts.n), 0);
  const AnomalySpan span = draw_span(rng, opts.n, opts.len_min, opts.len_max);
  mark(ds.anomaly_mask, span);

  for (int attempt = 0; attempt < kMaxTrajectoryRetries; ++attempt) {
    std::vector<double> x(static_cast<std::size_t>(opts.n));
    x[0] = rng.uniform01();
    double a = slope;  // sign flips at the (0, 1) borders
    bool escaped = false;
    for (std::int64_t t = 0; t + 1 < opts.n; ++t) {
      double next;
      if (ds.anomaly_mask[static_cast<std::size_t>(t + 1)]) {
        next = x[static_cast<std::size_t>(t)] * (1.0 + a);
        if (next >= 1.0 || next <= 0.0) {
          a = -a;
          next = x[static_cast<std::size_t>(t)] * (1.0 + a);
        }
      } else {
        next = logistic_step(opts.r, x[static_cast<std::size_t>(t)]);
      }
      if (!(next >= 0.0 && next <= 1.0)) {
        escaped = true;
        break;
      }
      x[static_cast<std::size_t>(t + 1)] = next;
    }
    if (!escaped) {
      ds.series.values = std::move(x);
      break;
    }
    if (attempt + 1 == kMaxTrajectoryRetries) {
      throw NumericError("logistic trajectory escaped [0,1] in " +
                         std::to_string(kMaxTrajectoryRetries) + " attempts");
    }
  }
  ds.series.dt = 1.0;
  if (opts.noise_sigma > 0.0) {
    for (double& v : ds.series.values) v += rng.normal(0.0, opts.noise_sigma);
  }

  ds.meta.generator = "logistic-linear";
  ds.meta.seed = seed;
  ds.meta.rng = Rng::name();
  ds.meta.spans = {span};
  ds.meta.params = {{"n", static_cast<double>(opts.n)},
                    {"r", opts.r},
                    {"slope", slope},
                    {"len_min", static_cast<double>(opts.len_min)},
                    {"len_max", static_cast<double>(opts.len_max)},
                    {"noise_sigma", opts.noise_sigma}};
  return ds;
}

LabeledDataset gen_randwalk_linear(std::uint64_t seed, const RandwalkOpts& opts) {
  if (!(opts.sigma > 0.0)) throw ParameterError("randwalk sigma must be positive");
  Rng rng(seed);
  LabeledDataset ds;
  ds.anomaly_mask.assign(static_cast<std::size_t>(opts.n), 0);

  std::vector<double> x(static_cast<std::size_t>(opts.n));
  double prod = 1.0;
  for (std::int64_t i = 0; i < opts.n; ++i) {
    double w = rng.normal(opts.mu, opts.sigma);
    while (1.0 + w <= 0.0) w = rng.normal(opts.mu, opts.sigma);  // keep the walk positive
    prod *= 1.0 + w;
    x[static_cast<std::size_t>(i)] = prod;
  }

  const AnomalySpan span = draw_span(rng, opts.n, opts.len_min, opts.len_max);
  mark(ds.anomaly_mask, span);
  const double v0 = x[static_cast<std::size_t>(span.start)];
  const double v1 = x[static_cast<std::size_t>(span.start + span.length - 1)];
  for (std::int64_t j = 0; j < span.length; ++j) {
    const double frac = span.length == 1
                            ? 0.0
                            : static_cast<double>(j) / static_cast<double>(span.length - 1);
    x[static_cast<std::size_t>(span.start + j)] = v0 + (v1 - v0) * frac;
  }

  ds.series.values = std::move(x);
  ds.series.dt = 1.0;
  ds.meta.generator = "randwalk-linear";
  ds.meta.seed = seed;
  ds.meta.rng = Rng::name();
  ds.meta.spans = {span};
  ds.meta.params = {{"n", static_cast<double>(opts.n)},
                    {"mu", opts.mu},
                    {"sigma", opts.sigma},
                    {"len_min", static_cast<double>(opts.len_min)},
                    {"len_max", static_cast<double>(opts.len_max)}};
  return ds;
}

LabeledDataset gen_logistic_double_tent(std::uint64_t seed, const LogisticOpts& opts) {
  Rng rng(seed);
  LabeledDataset ds;
  ds.anomaly_mask.assign(static_cast<std::size_t>(opts.n), 0);

  AnomalySpan first{};
  AnomalySpan second{};
  bool placed = false;
  for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
    const AnomalySpan a = draw_span(rng, opts.n, opts.len_min, opts.len_max);
    const AnomalySpan b = draw_span(rng, opts.n, opts.len_min, opts.len_max);
    const AnomalySpan& lo = a.start <= b.start ? a : b;
    const AnomalySpan& hi = a.start <= b.start ? b : a;
    if (lo.start + lo.length <= hi.start) {
      first = lo;
      second = hi;
      placed = true;
      break;
    }
  }
  if (!placed) {
    throw DataError("could not place two disjoint anomaly spans in " +
                    std::to_string(kMaxPlacementAttempts) + " attempts");
  }
  mark(ds.anomaly_mask, first);
  mark(ds.anomaly_mask, second);

  LogisticRun run = run_logistic_tent(rng, opts.n, opts.r, ds.anomaly_mask);
  ds.series.values = std::move(run.values);
  ds.series.dt = 1.0;
  if (opts.noise_sigma > 0.0) {
    for (double& v : ds.series.values) v += rng.normal(0.0, opts.noise_sigma);
  }

  const std::int64_t iei = second.start - (first.start + first.length);
  ds.meta.generator = "logistic-double-tent";
  ds.meta.seed = seed;
  ds.meta.rng = Rng::name();
  ds.meta.spans = {first, second};
  ds.meta.params = {{"n", static_cast<double>(opts.n)},
                    {"r", opts.r},
                    {"len_min", static_cast<double>(opts.len_min)},
                    {"len_max", static_cast<double>(opts.len_max)},
                    {"noise_sigma", opts.noise_sigma},
                    {"iei_samples", static_cast<double>(iei)},
                    {"tent_reflections", static_cast<double>(run.reflections)}};
  return ds;
}

LabeledDataset gen_ecg(std::uint64_t seed, const EcgOpts& opts, EcgParams params) {
  if (opts.downsample < 1) throw ParameterError("ecg downsample must be >= 1");
  if (!(opts.tachy_len_min > 0.0) || opts.tachy_len_max < opts.tachy_len_min) {
    throw ParameterError("ecg tachy length range invalid");
  }
  if (opts.duration <= params.warmup + opts.tachy_len_max) {
    throw ParameterError("ecg duration too short for warmup plus tachy span");
  }

  Rng rng(seed);
  double f_base = rng.normal(opts.base_rate_mean, opts.base_rate_sigma);
  while (f_base <= 1.0) f_base = rng.normal(opts.base_rate_mean, opts.base_rate_sigma);
  double f_tachy = rng.normal(opts.tachy_rate_mean, opts.tachy_rate_sigma);
  while (f_tachy <= 1.0) f_tachy = rng.normal(opts.tachy_rate_mean, opts.tachy_rate_sigma);
  const double tachy_len = rng.uniform(opts.tachy_len_min, opts.tachy_len_max);
  const double tachy_start = rng.uniform(params.warmup, opts.duration - tachy_len);
  const double tachy_end = tachy_start + tachy_len;

  params.coupling_sa_av = f_base;
  params.coupling_av_hp = f_base;
  EcgState initial;
  for (double& v : initial) v = rng.uniform(0.0, 0.1);

  const std::vector<double> raw =
      simulate_ecg(params, opts.duration, initial, f_base, f_tachy, tachy_start, tachy_end);

  const double dt = params.dt_sim;
  const auto warm_steps = static_cast<std::size_t>(std::llround(params.warmup / dt));
  const std::size_t retained = raw.size() - warm_steps;
  const auto window = static_cast<std::size_t>(opts.downsample);
  const std::size_t n_out = retained / window;

  LabeledDataset ds;
  ds.series.values.resize(n_out);
  ds.series.dt = dt * static_cast<double>(window);
  ds.series.t0 = params.warmup;
  ds.anomaly_mask.assign(n_out, 0);
  for (std::size_t j = 0; j < n_out; ++j) {
    double acc = 0.0;
    for (std::size_t u = 0; u < window; ++u) acc += raw[warm_steps + j * window + u];
    ds.series.values[j] = acc / static_cast<double>(window);
    const double block_begin = params.warmup + static_cast<double>(j * window) * dt;
    const double block_end = block_begin + static_cast<double>(window) * dt;
    if (block_begin < tachy_end && tachy_start < block_end) ds.anomaly_mask[j] = 1;
  }

  // contiguous tachy block expressed on the downsampled grid
  AnomalySpan span{};
  {
    std::size_t s = 0;
    while (s < n_out && !ds.anomaly_mask[s]) ++s;
    std::size_t e = s;
    while (e < n_out && ds.anomaly_mask[e]) ++e;
    span.start = static_cast<std::int64_t>(s);
    span.length = static_cast<std::int64_t>(e - s);
  }

  ds.meta.generator = "ecg";
  ds.meta.seed = seed;
  ds.meta.rng = Rng::name();
  ds.meta.spans = {span};
  ds.meta.params = {{"duration", opts.duration},
                    {"f1_base", f_base},
                    {"f1_tachy", f_tachy},
                    {"tachy_start", tachy_start},
                    {"tachy_len", tachy_len},
                    {"dt_sim", dt},
                    {"warmup", params.warmup},
                    {"downsample", static_cast<double>(opts.downsample)}};
  return ds;
}

}  // namespace unicorn
