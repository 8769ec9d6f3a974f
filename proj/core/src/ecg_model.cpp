#include "unicorn/ecg_model.hpp"

#include <cmath>
#include <string>

#include "unicorn/errors.hpp"

namespace unicorn {

InputCurrents input_currents(double y1, double y3, const EcgParams& params) {
  InputCurrents c{};
  c.at_de = y1 > 0.0 ? params.gain_at_de * y1 : 0.0;
  c.at_re = y1 <= 0.0 ? -params.gain_at_re * y1 : 0.0;
  c.vn_de = y3 > 0.0 ? params.gain_vn_de * y3 : 0.0;
  c.vn_re = y3 <= 0.0 ? -params.gain_vn_re * y3 : 0.0;
  return c;
}

namespace {

inline double pacemaker_accel(const PacemakerParams& p, double f, double x, double y) {
  return -p.a * y * (x - p.u1) * (x - p.u2) - f * x * (x + p.d) * (x + p.e);
}

inline void muscle_rhs(const MuscleParams& m, double z, double v, double current, double& dz,
                       double& dv) {
  dz = m.k * (-m.c * z * (z - m.w1) * (z - m.w2) - m.b * v - m.d * v * z + current);
  dv = m.k * m.h * (z - m.g * v);
}

}  // namespace

EcgState ecg_derivative(const EcgState& s, double f1, double y1_delayed, double y2_delayed,
                        const EcgParams& params) {
  const double x1 = s[0], y1 = s[1];
  const double x2 = s[2], y2 = s[3];
  const double x3 = s[4], y3 = s[5];

  EcgState d{};
  d[0] = y1;
  d[1] = pacemaker_accel(params.sa, f1, x1, y1);
  d[2] = y2;
  d[3] = pacemaker_accel(params.av, params.av.f, x2, y2) +
         params.coupling_sa_av * (y1_delayed - y2);
  d[4] = y3;
  d[5] = pacemaker_accel(params.hp, params.hp.f, x3, y3) +
         params.coupling_av_hp * (y2_delayed - y3);

  const InputCurrents cur = input_currents(y1, y3, params);
  muscle_rhs(params.p_wave, s[6], s[7], cur.at_de, d[6], d[7]);
  muscle_rhs(params.ta_wave, s[8], s[9], cur.at_re, d[8], d[9]);
  muscle_rhs(params.qrs_wave, s[10], s[11], cur.vn_de, d[10], d[11]);
  muscle_rhs(params.t_wave, s[12], s[13], cur.vn_re, d[12], d[13]);
  return d;
}

std::vector<double> simulate_ecg(const EcgParams& params, double duration,
                                 const EcgState& initial, double f1_base, double f1_tachy,
                                 double tachy_start, double tachy_end) {
  const double dt = params.dt_sim;
  if (!(dt > 0.0)) throw ParameterError("ecg: dt_sim must be positive");
  if (!(duration > 0.0)) throw ParameterError("ecg: duration must be positive");

  const auto n_steps = static_cast<std::size_t>(std::llround(duration / dt));
  const auto delay1 = static_cast<std::size_t>(std::llround(params.delay_sa_av / dt));
  const auto delay2 = static_cast<std::size_t>(std::llround(params.delay_av_hp / dt));
  const std::size_t hist_len = std::max<std::size_t>(std::max(delay1, delay2), 1) + 1;

  std::vector<double> y1_hist(hist_len, initial[1]);
  std::vector<double> y2_hist(hist_len, initial[3]);

  std::vector<double> out(n_steps);
  EcgState s = initial;
  for (std::size_t step = 0; step < n_steps; ++step) {
    const double t = static_cast<double>(step) * dt;
    const double f1 = (t >= tachy_start && t < tachy_end) ? f1_tachy : f1_base;
    const std::size_t pos = step % hist_len;
    y1_hist[pos] = s[1];
    y2_hist[pos] = s[3];
    const double y1_del = y1_hist[(step + hist_len - delay1) % hist_len];
    const double y2_del = y2_hist[(step + hist_len - delay2) % hist_len];

    const EcgState k1 = ecg_derivative(s, f1, y1_del, y2_del, params);
    EcgState tmp;
    for (int j = 0; j < 14; ++j) tmp[j] = s[j] + 0.5 * dt * k1[j];
    const EcgState k2 = ecg_derivative(tmp, f1, y1_del, y2_del, params);
    for (int j = 0; j < 14; ++j) tmp[j] = s[j] + 0.5 * dt * k2[j];
    const EcgState k3 = ecg_derivative(tmp, f1, y1_del, y2_del, params);
    for (int j = 0; j < 14; ++j) tmp[j] = s[j] + dt * k3[j];
    const EcgState k4 = ecg_derivative(tmp, f1, y1_del, y2_del, params);
    for (int j = 0; j < 14; ++j) {
      s[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }

    out[step] = params.offset + s[6] - s[8] + s[10] + s[12];
    if (step % 1000 == 0 && !std::isfinite(out[step])) {
      throw NumericError("ecg integration diverged at t = " + std::to_string(t) +
                         " s (non-finite state)");
    }
  }
  if (!out.empty() && !std::isfinite(out.back())) {
    throw NumericError("ecg integration diverged (non-finite final state)");
  }
  return out;
}

}  // namespace unicorn
