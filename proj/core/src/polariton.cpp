#include "polsim/polariton.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "polsim/numeric.hpp"
#include "polsim/units.hpp"

namespace polsim {

double cavity_dispersion(double q, const DeviceConfig& c) {
  q = std::fabs(q);
  return units::hbar_c / c.cavity_n_eff *
         std::hypot(c.cavity_q_z0, q);
}

double resonant_wavevector(const DeviceConfig& c) {
  double k = c.omega12 * c.cavity_n_eff / units::hbar_c;
  // Validated at load time: cutoff below omega12, so k > q_z0.
  return std::sqrt(k * k - c.cavity_q_z0 * c.cavity_q_z0);
}

BranchPair diagonalize_levels(double omega_c, double omega12, double coupling,
                              double q) {
  double mean = 0.5 * (omega_c + omega12);
  double half_det = 0.5 * (omega_c - omega12);
  double radius = std::hypot(half_det, coupling);
  double w_lp = mean - radius;
  double w_up = mean + radius;

  // UP eigenvector (cos(phi), sin(phi)) with tan(phi) = (w_up-omega_c)/Omega;
  // phi in [0, pi/2] keeps beta_UP >= 0 and makes the amplitudes continuous
  // in q. LP = (sin(phi), -cos(phi)) is the orthogonal complement with
  // alpha_LP >= 0.
  double phi;
  if (coupling == 0.0) {
    phi = omega_c >= omega12 ? 0.0 : std::numbers::pi / 2.0;
  } else {
    phi = std::atan2(w_up - omega_c, coupling);
  }
  double cphi = std::cos(phi), sphi = std::sin(phi);

  BranchPair pair;
  pair.up = {Branch::UP, q, w_up, cphi, sphi};
  pair.lp = {Branch::LP, q, w_lp, sphi, -cphi};
  return pair;
}

BranchPair diagonalize(double q, const DeviceConfig& c) {
  return diagonalize_levels(cavity_dispersion(q, c), c.omega12,
                            c.rabi_coupling(), q);
}

double branch_energy(Branch branch, double q, const DeviceConfig& c) {
  BranchPair p = diagonalize(q, c);
  return branch == Branch::LP ? p.lp.energy : p.up.energy;
}

PolaritonMode mode_at(Branch branch, double q, const DeviceConfig& c) {
  BranchPair p = diagonalize(q, c);
  return branch == Branch::LP ? p.lp : p.up;
}

namespace {

double beta_sq_at(Branch branch, double q, const DeviceConfig& c) {
  return mode_at(branch, q, c).beta_sq();
}

// Upper end of the search window: far enough into the photonic/matter
// asymptotes for any reachable Hopfield target or phonon balance.
double search_qmax(const DeviceConfig& c) {
  return 80.0 * resonant_wavevector(c);
}

}  // namespace

HopfieldRoot find_q_for_hopfield(Branch branch, double target_beta_sq,
                                 const DeviceConfig& c, SideHint hint) {
  if (!(target_beta_sq > 0.0 && target_beta_sq < 1.0))
    throw RootBracketError(
        "Hopfield target |beta|^2 must lie in the open interval (0,1); the "
        "pure limits are asymptotic only");
  double q_res = resonant_wavevector(c);
  double q_hi = search_qmax(c);

  double lo = 0.0, hi = q_hi;
  if (hint == SideHint::below_resonance) hi = q_res;
  if (hint == SideHint::above_resonance) lo = q_res;

  auto f = [&](double q) { return beta_sq_at(branch, q, c) - target_beta_sq; };
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0 || fhi == 0.0 || flo * fhi < 0.0) {
    double q = numeric::brent_root(f, lo, hi, 1e-14 * q_hi);
    // Polish to the contract tolerance on |beta|^2 itself.
    if (std::fabs(f(q)) > 1e-10) {
      q = numeric::brent_root(f, std::fmax(lo, q - 1e-6 * q_hi),
                              std::fmin(hi, q + 1e-6 * q_hi), 0.0, 400);
    }
    return {q, q < q_res ? SideHint::below_resonance
                         : SideHint::above_resonance};
  }
  throw RootBracketError(
      "no wave vector in the searched bracket reaches the requested matter "
      "weight (target " +
      std::to_string(target_beta_sq) + " on the " +
      (branch == Branch::UP ? std::string("UP") : std::string("LP")) +
      " branch)");
}

namespace {

// Solve omega_branch(q) = target on q >= 0; the branch energies are
// monotone increasing in |q|.
std::optional<double> solve_branch_energy(Branch branch, double target,
                                          const DeviceConfig& c) {
  double lo = 0.0;
  double hi = search_qmax(c);
  double elo = branch_energy(branch, lo, c);
  double ehi = branch_energy(branch, hi, c);
  if (target < elo || target > ehi) return std::nullopt;
  if (branch == Branch::LP && target >= c.omega12) return std::nullopt;
  auto f = [&](double q) { return branch_energy(branch, q, c) - target; };
  double q = numeric::brent_root(f, lo, hi, 0.0, 300);
  return q;
}

}  // namespace

std::vector<ResonantPairScan> find_phonon_resonant_pairs(
    const DeviceConfig& c, std::span<const double> pump_q_grid,
    Branch pump_branch, Branch signal_branch) {
  std::vector<ResonantPairScan> out;
  out.reserve(pump_q_grid.size());
  for (double qp : pump_q_grid) {
    ResonantPairScan scan;
    scan.pump_q = qp;
    PolaritonMode pump = mode_at(pump_branch, qp, c);
    double target = pump.energy - c.omega_LO;
    std::optional<double> qs = solve_branch_energy(signal_branch, target, c);
    if (qs) {
      // Energy depends on |q| only; pick the signal sign closest in
      // momentum to the pump.
      double q_signal = qp >= 0.0 ? *qs : -*qs;
      PolaritonMode signal = mode_at(signal_branch, q_signal, c);
      double delta = pump.energy - signal.energy - c.omega_LO;
      if (std::fabs(delta) < 1e-8 * c.omega_LO) {
        scan.geometry = ScatteringGeometry{
            pump, signal, std::fabs(signal.q - pump.q), delta};
      }
    }
    out.push_back(std::move(scan));
  }
  return out;
}

ScatteringGeometry default_geometry(const DeviceConfig& c) {
  double target = c.hopfield_target_beta_sq();
  HopfieldRoot root = find_q_for_hopfield(Branch::UP, target, c);
  std::array<double, 1> grid{root.q};
  auto scans = find_phonon_resonant_pairs(c, grid);
  if (!scans[0].geometry)
    throw RootBracketError(
        "default geometry: phonon emission from the UP pump mode at the "
        "Hopfield target cannot reach the LP branch; adjust rabi_splitting, "
        "omega_LO or the cavity");
  return *scans[0].geometry;
}

}  // namespace polsim
