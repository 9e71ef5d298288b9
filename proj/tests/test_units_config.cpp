#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "polsim/config.hpp"
#include "polsim/units.hpp"

using namespace polsim;

TEST_CASE("unit conversions compose to identity within 1e-12 relative") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> mag(-3.0, 14.0);
  for (int i = 0; i < 2000; ++i) {
    double v = std::pow(10.0, mag(rng));
    CHECK(units::density_to_cm2(units::density_from_cm2(v)) ==
          doctest::Approx(v).epsilon(1e-12));
    CHECK(units::intensity_to_w_cm2(units::intensity_from_w_cm2(v)) ==
          doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("GaAs preset loads with the documented values") {
  DeviceConfig c = load_config("");
  CHECK(units::density_to_cm2(c.electron_density) ==
        doctest::Approx(1e12).epsilon(1e-12));
  CHECK(c.omega12 == 150.0);
  CHECK(c.omega_LO == 36.0);
  CHECK(c.phonon_Q == 100.0);
  // Splitting tuned so both Fig.-1-style modes (amplitude 0.5) sit exactly
  // one LO phonon apart: omega_LO / sqrt(3).
  CHECK(c.rabi_splitting == doctest::Approx(20.7846096908).epsilon(1e-10));
  CHECK(c.gamma_loss == 5.0);
  CHECK(c.gamma_loss_pump == 5.0);
  CHECK(c.absorption == 0.4);
  CHECK(c.form_factor_constant == 0.1);
  CHECK(c.effective_mass == 0.067);
  CHECK(c.spin_degeneracy == 2);
  CHECK(c.total_electrons == 2000);
  CHECK(c.hopfield_convention == HopfieldConvention::amplitude);
  // Every key was defaulted.
  CHECK(c.defaulted_keys.size() == 19);
}

TEST_CASE("user keys override the preset and are not logged as defaults") {
  DeviceConfig c = load_config(
      "omega12 = 120\n"
      "# a comment\n"
      "gamma_loss = 2.5\n");
  CHECK(c.omega12 == 120.0);
  CHECK(c.gamma_loss == 2.5);
  for (const auto& k : c.defaulted_keys) {
    CHECK(k != "omega12");
    CHECK(k != "gamma_loss");
  }
}

TEST_CASE("validation errors name the offending key") {
  CHECK_THROWS_WITH_AS(load_config("absorption = 1.5\n"),
                       doctest::Contains("absorption"), ConfigError);
  CHECK_THROWS_WITH_AS(load_config("omega12 = -3\n"),
                       doctest::Contains("omega12"), ConfigError);
  CHECK_THROWS_WITH_AS(load_config("total_electrons = 1\n"),
                       doctest::Contains("total_electrons"), ConfigError);
  CHECK_THROWS_WITH_AS(load_config("phonon_Q = 0.5\n"),
                       doctest::Contains("phonon_Q"), ConfigError);
  try {
    load_config("absorption = 1.5\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.kind() == ConfigError::Kind::validation);
    CHECK(e.key() == "absorption");
  }
}

TEST_CASE("parse errors: unknown keys, malformed lines, duplicates") {
  CHECK_THROWS_WITH_AS(load_config("not_a_key = 1\n"),
                       doctest::Contains("not_a_key"), ConfigError);
  CHECK_THROWS_AS(load_config("omega12 150\n"), ConfigError);
  CHECK_THROWS_AS(load_config("omega12 = 150\nomega12 = 151\n"), ConfigError);
  CHECK_THROWS_AS(load_config("omega12 = 150meV\n"), ConfigError);
  try {
    load_config("not_a_key = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.kind() == ConfigError::Kind::parse);
  }
}

TEST_CASE("config round-trips through serialize") {
  DeviceConfig a = load_config(
      "electron_density = 7.3e11\n"
      "rabi_splitting = 20.784609690826528\n"
      "form_factor_model = infinite_well\n"
      "hopfield_convention = squared\n");
  DeviceConfig b = load_config(serialize(a));
  CHECK(a.same_values(b));
  CHECK(config_hash(a) == config_hash(b));
  // Reloading the serialization of the pure preset also round-trips.
  DeviceConfig p = load_config("");
  CHECK(p.same_values(load_config(serialize(p))));
}

TEST_CASE("derived well width matches an independent bisection solve") {
  auto level_spacing = [](double L, double mstar) {
    double h2_2m = units::hbar_sq_over_2me / mstar;
    return 3.0 * std::numbers::pi * std::numbers::pi * h2_2m / (L * L);
  };
  // Independent route: bisect the infinite-barrier spacing directly.
  auto solve = [&](double omega, double mstar) {
    double lo = 0.5, hi = 100.0;
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (lo + hi);
      (level_spacing(mid, mstar) > omega ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  double L = derive_well_width(150.0, 0.067);
  CHECK(L == doctest::Approx(solve(150.0, 0.067)).epsilon(1e-10));
  CHECK(L == doctest::Approx(10.6).epsilon(0.01));
  // Substituted back, the spacing reproduces omega12 to 1e-10.
  CHECK(level_spacing(L, 0.067) == doctest::Approx(150.0).epsilon(1e-10));
  // L scales as omega12^(-1/2) and as mstar^(-1/2).
  CHECK(derive_well_width(600.0, 0.067) ==
        doctest::Approx(0.5 * L).epsilon(1e-12));
  CHECK(derive_well_width(150.0, 0.268) ==
        doctest::Approx(0.5 * L).epsilon(1e-12));
}

TEST_CASE("Fermi wave vector") {
  double n_s = units::density_from_cm2(1e12);
  double kf = fermi_wavevector(n_s, 2);
  // Independent evaluation of sqrt(2 pi n_s) with explicit conversion.
  CHECK(kf == doctest::Approx(std::sqrt(2.0 * std::numbers::pi * 1e12 *
                                        1e-14)).epsilon(1e-12));
  CHECK(kf == doctest::Approx(0.251).epsilon(2e-3));
  CHECK(fermi_wavevector(n_s, 1) ==
        doctest::Approx(std::sqrt(2.0) * kf).epsilon(1e-12));
  CHECK(fermi_wavevector(4.0 * n_s, 2) ==
        doctest::Approx(2.0 * kf).epsilon(1e-12));
}
