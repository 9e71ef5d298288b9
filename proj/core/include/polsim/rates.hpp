#pragma once

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "polsim/bigint.hpp"
#include "polsim/config.hpp"
#include "polsim/correlator.hpp"
#include "polsim/polariton.hpp"

namespace polsim {

class OccupationCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ZetaFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact rational Hopfield weights for the rational-mode evaluation path.
struct ExactWeights {
  BigRational alpha_sq;
  BigRational beta_sq;
};

struct BosonicityResult {
  double B = 1.0;
  int m = 0;
  int n = 0;
  long N = 0;
  double pump_alpha_sq = 0.0, pump_beta_sq = 0.0;
  double signal_alpha_sq = 0.0, signal_beta_sq = 0.0;
  NumericMode mode = NumericMode::signed_log_float;
  double est_error = 0.0;
  /// Set when beta*beta' vanished and the elementary-boson limit B = 1 was
  /// substituted for the 0/0 ratio.
  bool pure_photon_limit = false;
  /// Set when the computed B left (0, 1]; treated as a numerics failure by
  /// callers that assert physical output.
  bool out_of_range = false;
};

struct ZetaFit {
  double zeta = 0.0;
  double max_residual = 0.0;
  long N = 0;
  std::vector<double> grid_x;  // (m+n)/N
  std::vector<double> grid_B;
};

/// Decomposed scattering rate; the factor product reproduces gamma_sc to
/// 1e-12 relative.
struct RateResult {
  double gamma_sc = 0.0;  // [ps^-1]
  double stimulation = 1.0;         // (n+1)
  double bosonicity = 1.0;          // B_m^n
  double signal_beta_sq = 0.0;      // |beta|^2
  double pump_beta_sq = 0.0;        // |beta'|^2
  double pump_density = 0.0;        // m/S [nm^-2]
  double phonon_quality = 0.0;      // omega_LO / Gamma_LO
  double coupling_prefactor = 0.0;  // 4 e^2 L_QW F_sigma / (eps hbar) [nm^2/ps]
  double detuning_factor = 1.0;     // Lorentzian, 1 when disabled
  double sigma = 0.0;               // L_QW |q - q'|
  double form_factor = 0.0;
  BosonicityResult bosonicity_detail;
};

double form_factor(double sigma, FormFactorModel model, double f0 = 0.1);
/// sigma -> 0 value of the infinite-well overlap integral.
double form_factor_infinite_well_limit();

/// Rate assembly bound to one device configuration. Owns a float-mode
/// correlator engine at N = total_electrons; the engine cache is shared and
/// thread-safe, so one RateModel may serve a worker pool.
class RateModel {
 public:
  explicit RateModel(const DeviceConfig& config,
                     double occupation_cap = 0.5);

  const DeviceConfig& config() const { return config_; }
  CorrelatorEngine& engine() { return *engine_; }

  /// |V^n_m|^2 with the phonon coupling constant divided out:
  /// (n+1) m beta^2 beta'^2 B_m^n.
  double matrix_element_sq_normalized(int m, int n, const PolaritonMode& pump,
                                      const PolaritonMode& signal);

  BosonicityResult bosonicity(int m, int n, const PolaritonMode& pump,
                              const PolaritonMode& signal);
  /// Hopfield weights given directly (no mode bookkeeping); used by sweeps
  /// over synthetic mode families.
  BosonicityResult bosonicity_weights(int m, int n, double pump_beta_sq,
                                      double signal_beta_sq);

  /// Bilinear interpolation of B between integer occupations, for
  /// continuous-m threshold solves and trajectories.
  double bosonicity_interpolated(double m, double n, double pump_beta_sq,
                                 double signal_beta_sq);

  /// Least-squares slope of (1 - B) against (m+n)/N through the origin over
  /// the supplied occupation grid (n = 0). Throws ZetaFitError when the
  /// worst residual exceeds residual_threshold.
  ZetaFit zeta_fit(double pump_beta_sq, double signal_beta_sq,
                   const std::vector<int>& m_grid,
                   double residual_threshold = 0.01);

  /// Spontaneous + stimulated scattering rate, Fermi golden rule with a
  /// Lorentzian phonon line. m and n may be non-integer (interpolated B).
  RateResult scattering_rate(double m, double n,
                             const ScatteringGeometry& geometry,
                             bool apply_detuning_factor = false);

  double occupation_cap() const { return cap_; }

 private:
  BosonicityResult bosonicity_cached(int m, int n, double pump_beta_sq,
                                     double signal_beta_sq);

  DeviceConfig config_;
  double cap_;
  std::shared_ptr<CorrelatorEngine> engine_;
  // Integer-occupation B values repeat heavily along trajectories and
  // threshold solves; cache them per weight pair.
  mutable std::shared_mutex b_cache_mutex_;
  std::unordered_map<std::uint64_t, BosonicityResult> b_cache_;
  double cached_pump_beta_sq_ = -1.0;
  double cached_signal_beta_sq_ = -1.0;
};

/// Exact-rational bosonicity for small occupations: weights are exact
/// rationals, every correlator evaluated in rational mode. Independent
/// tests drive this against the symbolic oracle.
BigRational bosonicity_exact(int m, int n, const ExactWeights& pump,
                             const ExactWeights& signal,
                             CorrelatorEngine& exact_engine);
/// Exact |V|^2 / |C22 - C11|^2.
BigRational matrix_element_sq_normalized_exact(int m, int n,
                                               const ExactWeights& pump,
                                               const ExactWeights& signal,
                                               CorrelatorEngine& exact_engine);

}  // namespace polsim
