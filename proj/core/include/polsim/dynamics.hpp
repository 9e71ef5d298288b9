#pragma once

#include <string>
#include <vector>

#include "polsim/rates.hpp"

namespace polsim {

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ThresholdBracketError : public std::runtime_error {
 public:
  ThresholdBracketError(const std::string& what, double max_rate)
      : std::runtime_error(what), max_achievable_rate(max_rate) {}
  double max_achievable_rate;  // [ps^-1]
};

struct RateEquationState {
  double m = 0.0;  // pump occupation
  double n = 0.0;  // signal occupation
  double t = 0.0;  // [ps]
};

/// Steady state of the no-depletion rate equations at pump intensity
/// I (internal units). Above threshold no finite steady state exists and
/// only the marker is set.
struct SteadyState {
  double m_star = 0.0;
  double n_star = 0.0;
  double gamma0 = 0.0;  // Gamma_sc(m*, 0) [ps^-1]
  bool above_threshold = false;
};

SteadyState steady_state(double intensity_internal, RateModel& model,
                         const ScatteringGeometry& geometry);

enum class TrajectoryRegime {
  reached_t_end,          // integrated to t_end without incident
  above_threshold_growth  // n crossed the occupation cap; no steady state
};

struct Trajectory {
  std::vector<RateEquationState> samples;
  TrajectoryRegime regime = TrajectoryRegime::reached_t_end;
};

struct IntegrateOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  /// Use the full B(m,n)-dependent rate; when false the n << m
  /// linearization Gamma(m,n) = (1+n) Gamma(m,0) is used instead.
  bool full_bosonicity = true;
  std::size_t max_samples = 100000;
};

/// Adaptive RK45 (Dormand-Prince) integration of
///   dn/dt = Gamma_sc(m, n) - Gamma_loss n
///   dm/dt = A I S / (hbar omega_pump) - Gamma'_loss m
/// Non-negativity is preserved by step rejection. Step-size underflow
/// raises IntegrationError rather than silently clipping.
Trajectory integrate(const RateEquationState& initial,
                     double intensity_internal, double t_end,
                     RateModel& model, const ScatteringGeometry& geometry,
                     const IntegrateOptions& options = {});

struct LedgerEntry {
  std::string key;
  std::string value;
  std::string provenance;  // "user" | "default" | "derived"
};

/// Threshold condition Gamma_sc(m_thr, 0) = Gamma_loss solved to 1e-10
/// relative residual, plus the closed-formula pump intensity
/// I_thr = Gamma'_loss hbar omega_pump (m_thr/S) / A. Every parameter that
/// entered the numbers is recorded in the ledger.
struct ThresholdResult {
  double m_thr = 0.0;               // occupation in the simulation box
  double m_thr_density_cm2 = 0.0;   // m_thr / S
  double intensity_thr_w_cm2 = 0.0; // I_thr
  double residual_rel = 0.0;        // |Gamma_sc - Gamma_loss| / Gamma_loss
  std::vector<LedgerEntry> ledger;
};

ThresholdResult threshold(RateModel& model,
                          const ScatteringGeometry& geometry);

/// I_thr from the closed steady-state formula alone (no root solve):
/// Gamma'_loss * hbar omega_pump * density / A, returned in W/cm^2.
double threshold_intensity_formula(double m_density_cm2,
                                   double gamma_loss_pump,
                                   double omega_pump_mev, double absorption);

}  // namespace polsim
