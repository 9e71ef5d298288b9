#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "polsim/config.hpp"
#include "polsim/polariton.hpp"
#include "polsim/units.hpp"

using namespace polsim;

namespace {

const DeviceConfig& gaas() {
  static DeviceConfig c = load_config("");
  return c;
}

// Residual of the eigenvalue equation M v = lambda v for the 2x2 coupling
// matrix; the independent check that diagonalize returns true eigenpairs.
double eigen_residual(double omega_c, double omega12, double coupling,
                      const PolaritonMode& mode) {
  double r1 = omega_c * mode.alpha + coupling * mode.beta -
              mode.energy * mode.alpha;
  double r2 = coupling * mode.alpha + omega12 * mode.beta -
              mode.energy * mode.beta;
  return std::hypot(r1, r2);
}

}  // namespace

TEST_CASE("cavity dispersion: calibration, origin value, monotonicity") {
  const DeviceConfig& c = gaas();
  double q_res = resonant_wavevector(c);
  CHECK(cavity_dispersion(q_res, c) == doctest::Approx(150.0).epsilon(1e-12));
  CHECK(cavity_dispersion(0.0, c) ==
        doctest::Approx(units::hbar_c * c.cavity_q_z0 / c.cavity_n_eff)
            .epsilon(1e-12));
  CHECK(cavity_dispersion(2.0 * q_res, c) > cavity_dispersion(q_res, c));
  // 60 degree resonance puts the cutoff at half the transition energy.
  CHECK(cavity_dispersion(0.0, c) == doctest::Approx(75.0).epsilon(1e-9));
}

TEST_CASE("resonant diagonalization splits symmetrically") {
  BranchPair p = diagonalize_levels(150.0, 150.0, 7.0);
  CHECK(p.lp.energy == doctest::Approx(143.0).epsilon(1e-12));
  CHECK(p.up.energy == doctest::Approx(157.0).epsilon(1e-12));
  CHECK(p.lp.alpha_sq() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p.lp.beta_sq() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p.up.alpha_sq() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p.up.beta_sq() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("decoupled limit: LP is the pure photon below the transition") {
  BranchPair p = diagonalize_levels(120.0, 150.0, 0.0);
  CHECK(p.lp.energy == 120.0);
  CHECK(p.lp.alpha == doctest::Approx(1.0));
  CHECK(p.lp.beta == doctest::Approx(0.0));
  CHECK(p.up.energy == 150.0);
  CHECK(std::fabs(p.up.beta) == doctest::Approx(1.0));
}

TEST_CASE("detuned case against the closed-form mixing angle") {
  // omega_c - omega12 = +14, coupling 7: eigenvalues omega12 + 7 -+ 7 sqrt2,
  // |beta_LP|^2 = cos^2(22.5 deg) with tan(2 theta) = 2*7/14 = 1.
  BranchPair p = diagonalize_levels(164.0, 150.0, 7.0);
  CHECK(p.lp.energy ==
        doctest::Approx(157.0 - 7.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(p.up.energy ==
        doctest::Approx(157.0 + 7.0 * std::sqrt(2.0)).epsilon(1e-12));
  double theta = 0.5 * std::atan(1.0);
  CHECK(p.lp.beta_sq() ==
        doctest::Approx(std::cos(theta) * std::cos(theta)).epsilon(1e-12));
  // Independent eigenpair verification.
  CHECK(eigen_residual(164.0, 150.0, 7.0, p.lp) < 1e-12 * p.lp.energy);
  CHECK(eigen_residual(164.0, 150.0, 7.0, p.up) < 1e-12 * p.up.energy);
}

TEST_CASE("grid invariants: normalization, trace identity, splitting floor") {
  const DeviceConfig& c = gaas();
  double q_res = resonant_wavevector(c);
  double coupling = c.rabi_coupling();
  double min_split = 1e300;
  double prev_alpha_lp = -1.0;
  bool continuous = true;
  for (int i = 0; i < 1000; ++i) {
    double q = 2.0 * q_res * i / 999.0;
    BranchPair p = diagonalize(q, c);
    CHECK(p.lp.alpha_sq() + p.lp.beta_sq() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.up.alpha_sq() + p.up.beta_sq() ==
          doctest::Approx(1.0).epsilon(1e-12));
    double trace = cavity_dispersion(q, c) + c.omega12;
    CHECK(p.lp.energy + p.up.energy ==
          doctest::Approx(trace).epsilon(1e-10));
    double split = p.up.energy - p.lp.energy;
    CHECK(split >= 2.0 * coupling - 1e-10);
    min_split = std::fmin(min_split, split);
    CHECK(p.lp.energy <= std::fmin(cavity_dispersion(q, c), c.omega12) + 1e-10);
    CHECK(p.up.energy >= std::fmax(cavity_dispersion(q, c), c.omega12) - 1e-10);
    // Fixed sign convention forbids amplitude sign flips along the branch.
    if (p.lp.alpha < 0.0 || p.up.beta < 0.0) continuous = false;
    if (prev_alpha_lp >= 0.0 && std::fabs(p.lp.alpha - prev_alpha_lp) > 0.01)
      continuous = false;
    prev_alpha_lp = p.lp.alpha;
  }
  CHECK(continuous);
  // Off-resonance grid points sit strictly above the floor; the floor is
  // attained exactly at q_res.
  CHECK(min_split > 2.0 * coupling);
  double split_at_res =
      diagonalize(q_res, c).up.energy - diagonalize(q_res, c).lp.energy;
  CHECK(split_at_res == doctest::Approx(2.0 * coupling).epsilon(1e-10));
}

TEST_CASE("find_q_for_hopfield round-trips the target") {
  const DeviceConfig& c = gaas();
  double q_res = resonant_wavevector(c);

  HopfieldRoot mid_lp = find_q_for_hopfield(Branch::LP, 0.5, c);
  CHECK(mid_lp.q == doctest::Approx(q_res).epsilon(1e-9));
  HopfieldRoot mid_up = find_q_for_hopfield(Branch::UP, 0.5, c);
  CHECK(mid_up.q == doctest::Approx(q_res).epsilon(1e-9));

  HopfieldRoot quarter = find_q_for_hopfield(Branch::LP, 0.25, c);
  CHECK(quarter.side == SideHint::below_resonance);
  CHECK(mode_at(Branch::LP, quarter.q, c).beta_sq() ==
        doctest::Approx(0.25).epsilon(1e-9));
  // Re-diagonalizing at the root reproduces the target to 1e-9.
  for (double target : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    HopfieldRoot root = find_q_for_hopfield(Branch::UP, target, c);
    CHECK(mode_at(Branch::UP, root.q, c).beta_sq() ==
          doctest::Approx(target).epsilon(1e-9));
  }

  // Pure limits are asymptotic; targets off the searched side fail loudly.
  CHECK_THROWS_AS(find_q_for_hopfield(Branch::LP, 1.0, c), RootBracketError);
  CHECK_THROWS_AS(
      find_q_for_hopfield(Branch::LP, 0.25, c, SideHint::above_resonance),
      RootBracketError);
}

TEST_CASE("phonon-resonant pairs at 14 meV splitting") {
  DeviceConfig c = load_config("rabi_splitting = 14\n");
  double q_res = resonant_wavevector(c);

  // Pump at |beta_UP|^2 = 0.5, i.e. q' = q_res; the signal must sit 36 meV
  // below on the LP branch.
  std::vector<double> grid{q_res};
  auto scans = find_phonon_resonant_pairs(c, grid);
  REQUIRE(scans.size() == 1);
  REQUIRE(scans[0].geometry.has_value());
  const ScatteringGeometry& g = *scans[0].geometry;
  CHECK(g.pump.energy - g.signal.energy ==
        doctest::Approx(36.0).epsilon(1e-9));
  CHECK(std::fabs(g.detuning) < 1e-8 * c.omega_LO);
  CHECK(g.momentum_transfer == doctest::Approx(std::fabs(g.signal.q - g.pump.q))
                                   .epsilon(1e-12));

  // A phonon harder than the whole polariton window is forbidden
  // everywhere.
  DeviceConfig hard = load_config("omega_LO = 140\n");
  auto forbidden = find_phonon_resonant_pairs(hard, grid);
  CHECK(!forbidden[0].geometry.has_value());
}

TEST_CASE("default geometry honors the Hopfield convention") {
  const DeviceConfig& c = gaas();
  ScatteringGeometry g = default_geometry(c);
  CHECK(g.pump.branch == Branch::UP);
  CHECK(g.signal.branch == Branch::LP);
  CHECK(g.pump.beta_sq() == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(std::fabs(g.detuning) < 1e-8 * c.omega_LO);
  // With the preset splitting the pair is symmetric about omega12: the
  // pump sits at 150 + 18 meV, the signal at 150 - 18, and both carry the
  // same matter weight.
  CHECK(g.pump.energy == doctest::Approx(168.0).epsilon(1e-9));
  CHECK(g.signal.energy == doctest::Approx(132.0).epsilon(1e-9));
  CHECK(g.signal.beta_sq() == doctest::Approx(0.25).epsilon(1e-8));

  DeviceConfig sq = load_config("hopfield_convention = squared\n");
  ScatteringGeometry gs = default_geometry(sq);
  CHECK(gs.pump.beta_sq() == doctest::Approx(0.5).epsilon(1e-9));
}
