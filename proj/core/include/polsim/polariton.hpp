#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "polsim/config.hpp"

namespace polsim {

enum class Branch { LP, UP };

/// One polariton eigenmode at in-plane wave vector q (signed scalar along a
/// 1D cut through the momentum plane). alpha/beta are the real Hopfield
/// amplitudes of the photon and matter components; alpha^2 + beta^2 = 1.
struct PolaritonMode {
  Branch branch = Branch::LP;
  double q = 0.0;       // nm^-1
  double energy = 0.0;  // meV
  double alpha = 0.0;
  double beta = 0.0;

  double alpha_sq() const { return alpha * alpha; }
  double beta_sq() const { return beta * beta; }
};

struct BranchPair {
  PolaritonMode lp;
  PolaritonMode up;
};

/// Pump/signal mode pair for one phonon-emission channel.
struct ScatteringGeometry {
  PolaritonMode pump;    // initial mode (eta', q')
  PolaritonMode signal;  // final mode (eta, q)
  double momentum_transfer = 0.0;  // |q - q'| [nm^-1]
  double detuning = 0.0;  // omega_pump - omega_signal - omega_LO [meV]
};

class RootBracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cavity photon energy hbar*omega_c(q) = (hbar c / n_eff) sqrt(qz0^2+q^2).
double cavity_dispersion(double q, const DeviceConfig& config);

/// Wave vector where the cavity crosses the intersubband transition.
double resonant_wavevector(const DeviceConfig& config);

/// Eigenmodes of [[omega_c, Omega], [Omega, omega12]] with the sign
/// convention alpha_LP > 0, beta_UP > 0 (continuous in q).
BranchPair diagonalize_levels(double omega_c, double omega12,
                              double coupling, double q = 0.0);
BranchPair diagonalize(double q, const DeviceConfig& config);

double branch_energy(Branch branch, double q, const DeviceConfig& config);
PolaritonMode mode_at(Branch branch, double q, const DeviceConfig& config);

enum class SideHint { automatic, below_resonance, above_resonance };

/// Wave vector where |beta_branch(q)|^2 equals target, to 1e-10. The matter
/// weight is monotone in |q|, so the solution on q >= 0 is unique; a side
/// hint restricts the search bracket to one side of q_res and fails loudly
/// when the target does not live there.
struct HopfieldRoot {
  double q;
  SideHint side;  // which side of q_res the root lies on
};
HopfieldRoot find_q_for_hopfield(Branch branch, double target_beta_sq,
                                 const DeviceConfig& config,
                                 SideHint hint = SideHint::automatic);

/// For each pump wave vector, the collinear signal mode satisfying
/// omega_pump(q') - omega_signal(q) = omega_LO, or nullopt when the phonon
/// energy is kinematically unreachable. Both signs of q solve the energy
/// balance; the returned signal takes the sign minimizing |q - q'|.
struct ResonantPairScan {
  double pump_q;
  std::optional<ScatteringGeometry> geometry;
};
std::vector<ResonantPairScan> find_phonon_resonant_pairs(
    const DeviceConfig& config, std::span<const double> pump_q_grid,
    Branch pump_branch = Branch::UP, Branch signal_branch = Branch::LP);

/// The toolkit's default channel: pump on the UP branch at the configured
/// Hopfield target (|beta_UP|^2 = 0.25 under the amplitude convention),
/// signal on the LP branch at exact phonon resonance.
ScatteringGeometry default_geometry(const DeviceConfig& config);

}  // namespace polsim
