#include "polsim/dynamics.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include "polsim/numeric.hpp"
#include "polsim/units.hpp"

namespace polsim {

namespace {

double pump_feed(double intensity_internal, const DeviceConfig& c,
                 const ScatteringGeometry& g) {
  // A I S / (hbar omega_pump) [1/ps]
  return c.absorption * intensity_internal * c.surface() / g.pump.energy;
}

}  // namespace

SteadyState steady_state(double intensity_internal, RateModel& model,
                         const ScatteringGeometry& geometry) {
  if (intensity_internal < 0.0)
    throw std::invalid_argument("steady_state: intensity must be >= 0");
  const DeviceConfig& c = model.config();
  SteadyState ss;
  ss.m_star = pump_feed(intensity_internal, c, geometry) / c.gamma_loss_pump;
  if (ss.m_star == 0.0) return ss;
  ss.gamma0 = model.scattering_rate(ss.m_star, 0.0, geometry).gamma_sc;
  if (ss.gamma0 < c.gamma_loss) {
    // n << m linearization: (1+n) Gamma0 = Gamma_loss n.
    ss.n_star = ss.gamma0 / (c.gamma_loss - ss.gamma0);
  } else {
    ss.above_threshold = true;
  }
  return ss;
}

Trajectory integrate(const RateEquationState& initial,
                     double intensity_internal, double t_end,
                     RateModel& model, const ScatteringGeometry& geometry,
                     const IntegrateOptions& opt) {
  if (!(t_end > 0.0))
    throw std::invalid_argument("integrate: t_end must be > 0");
  if (initial.m < 0.0 || initial.n < 0.0)
    throw std::invalid_argument("integrate: occupations must be >= 0");

  const DeviceConfig& c = model.config();
  const double feed = pump_feed(intensity_internal, c, geometry);
  // Exit with the growth marker before m+n can overrun the bosonicity
  // occupation cap.
  const double occupation_exit =
      0.9 * model.occupation_cap() * c.total_electrons;

  auto rate = [&](double m, double n) {
    if (m <= 0.0) return 0.0;
    if (opt.full_bosonicity)
      return model.scattering_rate(m, n, geometry).gamma_sc;
    return (1.0 + n) * model.scattering_rate(m, 0.0, geometry).gamma_sc;
  };
  auto rhs = [&](double /*t*/, const std::array<double, 2>& y,
                 std::array<double, 2>& dy) {
    double m = std::fmax(y[0], 0.0), n = std::fmax(y[1], 0.0);
    dy[0] = feed - c.gamma_loss_pump * m;
    dy[1] = rate(m, n) - c.gamma_loss * n;
  };

  // Dormand-Prince 5(4) pair.
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  Trajectory traj;
  std::array<double, 2> y{initial.m, initial.n};
  double t = initial.t;
  traj.samples.push_back({y[0], y[1], t});

  std::array<double, 2> k1, k2, k3, k4, k5, k6, k7, ytmp, y5;
  rhs(t, y, k1);
  double h = std::fmin(1e-3 / std::fmax(c.gamma_loss, c.gamma_loss_pump),
                       t_end - t);
  const double h_min = 1e-14 * t_end;

  while (t < t_end) {
    if (h < h_min)
      throw IntegrationError(
          "step size underflow at t = " + std::to_string(t) +
          " ps; the system is blowing up faster than the integrator can "
          "follow (likely far above threshold)");
    h = std::fmin(h, t_end - t);

    auto stage = [&](std::array<double, 2>& out, auto... pairs) {
      out = y;
      ((out[0] += h * pairs.first[0] * pairs.second,
        out[1] += h * pairs.first[1] * pairs.second),
       ...);
    };
    stage(ytmp, std::pair{k1, a21});
    rhs(t, ytmp, k2);
    stage(ytmp, std::pair{k1, a31}, std::pair{k2, a32});
    rhs(t, ytmp, k3);
    stage(ytmp, std::pair{k1, a41}, std::pair{k2, a42}, std::pair{k3, a43});
    rhs(t, ytmp, k4);
    stage(ytmp, std::pair{k1, a51}, std::pair{k2, a52}, std::pair{k3, a53},
          std::pair{k4, a54});
    rhs(t, ytmp, k5);
    stage(ytmp, std::pair{k1, a61}, std::pair{k2, a62}, std::pair{k3, a63},
          std::pair{k4, a64}, std::pair{k5, a65});
    rhs(t, ytmp, k6);
    stage(y5, std::pair{k1, b1}, std::pair{k3, b3}, std::pair{k4, b4},
          std::pair{k5, b5}, std::pair{k6, b6});
    rhs(t + h, y5, k7);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                       e6 * k6[i] + e7 * k7[i]);
      double scale =
          opt.abs_tol + opt.rel_tol * std::fmax(std::fabs(y[i]),
                                                std::fabs(y5[i]));
      err = std::fmax(err, std::fabs(ei) / scale);
    }

    bool negative = y5[0] < 0.0 || y5[1] < 0.0;
    if (err <= 1.0 && !negative) {
      t += h;
      y = y5;
      k1 = k7;  // FSAL
      // Clamp denormal drift only; real negativity was rejected above.
      y[0] = std::fmax(y[0], 0.0);
      y[1] = std::fmax(y[1], 0.0);
      if (traj.samples.size() < opt.max_samples)
        traj.samples.push_back({y[0], y[1], t});
      if (y[0] + y[1] > occupation_exit) {
        traj.regime = TrajectoryRegime::above_threshold_growth;
        return traj;
      }
    }
    double grow = negative ? 0.3
                           : 0.9 * std::pow(std::fmax(err, 1e-10), -0.2);
    h *= std::fmin(5.0, std::fmax(0.2, grow));
  }
  return traj;
}

ThresholdResult threshold(RateModel& model,
                          const ScatteringGeometry& geometry) {
  const DeviceConfig& c = model.config();
  double m_max = model.occupation_cap() * c.total_electrons;
  auto gamma = [&](double m) {
    return model.scattering_rate(m, 0.0, geometry).gamma_sc;
  };
  double g_hi = gamma(m_max);
  if (g_hi < c.gamma_loss)
    throw ThresholdBracketError(
        "scattering rate never reaches gamma_loss within the occupation "
        "cap: max " +
            std::to_string(g_hi) + " ps^-1 at m/N = " +
            std::to_string(model.occupation_cap()) + " vs gamma_loss " +
            std::to_string(c.gamma_loss) + " ps^-1",
        g_hi);

  double m_thr = numeric::brent_root(
      [&](double m) { return gamma(m) - c.gamma_loss; }, 0.0, m_max, 0.0,
      400);
  // Polish with a secant step in case Brent stopped on the x-interval.
  double res = gamma(m_thr) - c.gamma_loss;
  for (int it = 0; it < 60 && std::fabs(res) > 1e-13 * c.gamma_loss; ++it) {
    double dm = std::fmax(m_thr * 1e-9, 1e-12);
    double slope = (gamma(m_thr + dm) - gamma(m_thr - dm)) / (2.0 * dm);
    if (slope == 0.0) break;
    m_thr -= res / slope;
    res = gamma(m_thr) - c.gamma_loss;
  }

  ThresholdResult out;
  out.m_thr = m_thr;
  out.residual_rel = std::fabs(res) / c.gamma_loss;
  double density_nm2 = m_thr / c.surface();
  out.m_thr_density_cm2 = units::density_to_cm2(density_nm2);
  out.intensity_thr_w_cm2 = threshold_intensity_formula(
      out.m_thr_density_cm2, c.gamma_loss_pump, geometry.pump.energy,
      c.absorption);

  auto fmt = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  auto user_or_default = [&](const char* key) {
    for (const auto& k : c.defaulted_keys)
      if (k == key) return "default";
    return "user";
  };
  RateResult rr = model.scattering_rate(m_thr, 0.0, geometry);
  out.ledger = {
      {"m_thr", fmt(m_thr), "derived"},
      {"m_thr_density_cm2", fmt(out.m_thr_density_cm2), "derived"},
      {"intensity_thr_w_cm2", fmt(out.intensity_thr_w_cm2), "derived"},
      {"residual_rel", fmt(out.residual_rel), "derived"},
      {"gamma_loss", fmt(c.gamma_loss), user_or_default("gamma_loss")},
      {"gamma_loss_pump", fmt(c.gamma_loss_pump),
       user_or_default("gamma_loss_pump")},
      {"absorption", fmt(c.absorption), user_or_default("absorption")},
      {"electron_density_cm2",
       fmt(units::density_to_cm2(c.electron_density)),
       user_or_default("electron_density")},
      {"total_electrons", std::to_string(c.total_electrons),
       user_or_default("total_electrons")},
      {"surface_nm2", fmt(c.surface()), "derived"},
      {"omega12", fmt(c.omega12), user_or_default("omega12")},
      {"omega_LO", fmt(c.omega_LO), user_or_default("omega_LO")},
      {"phonon_Q", fmt(c.phonon_Q), user_or_default("phonon_Q")},
      {"rabi_splitting", fmt(c.rabi_splitting),
       user_or_default("rabi_splitting")},
      {"well_width_nm", fmt(c.well_width), user_or_default("well_width")},
      {"epsilon_r", fmt(c.epsilon_r), user_or_default("epsilon_r")},
      {"form_factor", fmt(rr.form_factor), "derived"},
      {"sigma", fmt(rr.sigma), "derived"},
      {"hopfield_convention",
       c.hopfield_convention == HopfieldConvention::amplitude ? "amplitude"
                                                              : "squared",
       user_or_default("hopfield_convention")},
      {"pump_q", fmt(geometry.pump.q), "derived"},
      {"pump_energy_mev", fmt(geometry.pump.energy), "derived"},
      {"pump_beta_sq", fmt(geometry.pump.beta_sq()), "derived"},
      {"signal_q", fmt(geometry.signal.q), "derived"},
      {"signal_energy_mev", fmt(geometry.signal.energy), "derived"},
      {"signal_beta_sq", fmt(geometry.signal.beta_sq()), "derived"},
      {"geometry_detuning_mev", fmt(geometry.detuning), "derived"},
      {"bosonicity_at_threshold", fmt(rr.bosonicity), "derived"},
      {"m_thr_over_N", fmt(m_thr / c.total_electrons), "derived"},
      // Informational: electronic population inversion would need
      // m/N ~ 0.5; the threshold sits this factor below it.
      {"inversion_occupation_headroom",
       fmt(0.5 * c.total_electrons / m_thr), "derived"},
  };
  return out;
}

double threshold_intensity_formula(double m_density_cm2,
                                   double gamma_loss_pump,
                                   double omega_pump_mev, double absorption) {
  double density_nm2 = units::density_from_cm2(m_density_cm2);
  double internal =
      gamma_loss_pump * omega_pump_mev * density_nm2 / absorption;
  return units::intensity_to_w_cm2(internal);
}

}  // namespace polsim
