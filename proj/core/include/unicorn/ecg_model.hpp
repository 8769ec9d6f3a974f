#pragma once

#include <array>
#include <vector>

namespace unicorn {

/// van der Pol pacemaker: x' = y, y' = -a y (x-u1)(x-u2) - f x (x+d)(x+e).
struct PacemakerParams {
  double a;
  double f;
  double u1;
  double u2;
  double d;
  double e;
};

/// FitzHugh-Nagumo muscle response:
///   z' = k (-c z (z-w1)(z-w2) - b v - d v z + I)
///   v' = k h (z - g v)
struct MuscleParams {
  double k;
  double c;
  double b;
  double d;
  double h;
  double g;
  double w1;
  double w2;
};

/// Heterogeneous oscillator ECG model: three delay-coupled van der Pol
/// pacemakers (SA, AV, His-Purkinje) driving four FitzHugh-Nagumo muscle
/// responses (P, Ta, QRS, T waves). Output is z0 + z1 - z2 + z3 + z4.
///
/// The published parameter set has no delay values; both delays default to
/// zero (instantaneous coupling) and are exposed here.
struct EcgParams {
  PacemakerParams sa{40.0, 22.0, 0.83, -0.83, 3.0, 3.5};
  PacemakerParams av{50.0, 8.4, 0.83, -0.83, 3.0, 5.0};
  PacemakerParams hp{50.0, 1.5, 0.83, -0.83, 3.0, 12.0};

  MuscleParams p_wave{2e3, 0.26, 0.0, 0.4, 0.004, 1.0, 0.13, 1.0};
  MuscleParams ta_wave{4e2, 0.26, 0.0, 0.4, 0.004, 1.0, 0.19, 1.0};
  MuscleParams qrs_wave{1e4, 0.12, 0.015, 0.09, 0.008, 1.0, 0.12, 0.11};
  MuscleParams t_wave{2e3, 0.1, 0.0, 0.1, 0.008, 1.0, 0.22, 0.8};

  double coupling_sa_av = 22.0;  ///< K_SA-AV, defaults to the SA rate f1
  double coupling_av_hp = 22.0;  ///< K_AV-HP
  double delay_sa_av = 0.0;      ///< seconds
  double delay_av_hp = 0.0;      ///< seconds

  double gain_at_de = 4e-5;  ///< K_AT,De
  double gain_at_re = 4e-5;  ///< K_AT,Re
  double gain_vn_de = 9e-5;  ///< K_VN,De
  double gain_vn_re = 6e-5;  ///< K_VN,Re

  double offset = 0.2;  ///< z0
  double dt_sim = 1e-3;
  double warmup = 2.0;  ///< seconds discarded before output
};

/// State layout: x1,y1, x2,y2, x3,y3, z1,v1, z2,v2, z3,v3, z4,v4.
using EcgState = std::array<double, 14>;

/// Pacemaker-driven input currents, the four case splits on y1 and y3 sign.
struct InputCurrents {
  double at_de;
  double at_re;
  double vn_de;
  double vn_re;
};

InputCurrents input_currents(double y1, double y3, const EcgParams& params);

/// Full right-hand side; f1 is the (possibly rate-shifted) SA stiffness,
/// y1_delayed / y2_delayed the delayed coupling inputs.
EcgState ecg_derivative(const EcgState& s, double f1, double y1_delayed, double y2_delayed,
                        const EcgParams& params);

/// Fixed-step RK4 with a ring-buffer history for the delayed couplings
/// (delays are quantized to whole steps; history starts constant at the
/// initial state). The SA rate is f1_tachy inside [tachy_start, tachy_end)
/// and f1_base elsewhere. Returns the raw output at dt_sim resolution,
/// including warmup. Throws NumericError on divergence.
std::vector<double> simulate_ecg(const EcgParams& params, double duration,
                                 const EcgState& initial, double f1_base, double f1_tachy,
                                 double tachy_start, double tachy_end);

}  // namespace unicorn
