#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "polsim/config.hpp"
#include "polsim/oracle.hpp"
#include "polsim/polariton.hpp"
#include "polsim/rates.hpp"
#include "polsim/units.hpp"

using namespace polsim;

namespace {

const DeviceConfig& gaas() {
  static DeviceConfig c = load_config("");
  return c;
}

BigRational binom(long n, long k) {
  return BigRational(BigInt::factorial(static_cast<unsigned>(n)),
                     BigInt::factorial(static_cast<unsigned>(k)) *
                         BigInt::factorial(static_cast<unsigned>(n - k)));
}

BigRational rpow(const BigRational& b, long e) {
  BigRational r(1);
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

// Fully independent route to B: every correlator from the brute-force
// symbolic oracle, the double sums assembled directly from the matrix
// element and normalization formulas.
BigRational oracle_bosonicity(int m, int n, const BigRational& a2,
                              const BigRational& b2, const BigRational& ap2,
                              const BigRational& bp2, long N) {
  auto K = [&](int a, int b, int c, int d) {
    return oracle::k_oracle(a, b, c, d, N);
  };
  auto f = [&](int mm, int nn) {
    if (nn == 0) return K(mm - 1, 1, mm - 1, 0);
    return BigRational::ratio(nn, mm) * K(mm - 1, nn + 1, mm, nn - 1) +
           K(mm - 1, nn + 1, mm - 1, nn);
  };
  BigRational sum_mat;
  for (int l = 0; l <= n; ++l)
    for (int h = 0; h <= m - 1; ++h)
      sum_mat += binom(n, l) * binom(m - 1, h) * rpow(a2, l) *
                 rpow(b2, n - l) * rpow(ap2, h) * rpow(bp2, m - 1 - h) *
                 f(m - h, n - l);
  auto norm = [&](int nn, int mm) {
    BigRational out;
    for (int l = 0; l <= nn; ++l)
      for (int h = 0; h <= mm; ++h)
        out += binom(nn, l) * binom(mm, h) * rpow(a2, l) * rpow(b2, nn - l) *
               rpow(ap2, h) * rpow(bp2, mm - h) *
               K(nn - l, mm - h, nn - l, mm - h - 1);
    return out;
  };
  return sum_mat * sum_mat / (norm(n, m) * norm(n + 1, m - 1));
}

ExactWeights weights(const BigRational& beta_sq) {
  return {BigRational(1) - beta_sq, beta_sq};
}

}  // namespace

TEST_CASE("m=1, n=0: the matrix element is beta^2 beta'^2 exactly") {
  CorrelatorEngine eng(7, NumericMode::exact_rational);
  ExactWeights pump = weights(BigRational::ratio(1, 4));
  ExactWeights signal = weights(BigRational::ratio(2, 3));
  CHECK(bosonicity_exact(1, 0, pump, signal, eng) == BigRational(1));
  CHECK(matrix_element_sq_normalized_exact(1, 0, pump, signal, eng) ==
        BigRational::ratio(1, 4) * BigRational::ratio(2, 3));

  RateModel model(gaas());
  PolaritonMode p{Branch::UP, 0.0, 160.0, std::sqrt(0.75), std::sqrt(0.25)};
  PolaritonMode s{Branch::LP, 0.0, 124.0, std::sqrt(1.0 / 3), std::sqrt(2.0 / 3)};
  CHECK(model.matrix_element_sq_normalized(1, 0, p, s) ==
        doctest::Approx(0.25 * (2.0 / 3)).epsilon(1e-12));
  CHECK(model.bosonicity(1, 0, p, s).B == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pure-photon pump: vanishing element, B = 1 by convention") {
  RateModel model(gaas());
  PolaritonMode photon{Branch::UP, 0.0, 160.0, 1.0, 0.0};
  PolaritonMode matter{Branch::LP, 0.0, 124.0, 0.0, 1.0};
  CHECK(model.matrix_element_sq_normalized(3, 2, photon, matter) == 0.0);
  BosonicityResult b = model.bosonicity(3, 2, photon, matter);
  CHECK(b.B == 1.0);
  CHECK(b.pure_photon_limit);
}

TEST_CASE("m=2, n=0 pure matter at N=5 against the oracle assembly") {
  CorrelatorEngine eng(5, NumericMode::exact_rational);
  ExactWeights matter = weights(BigRational(1));
  BigRational b = bosonicity_exact(2, 0, matter, matter, eng);
  CHECK(b == oracle_bosonicity(2, 0, BigRational(0), BigRational(1),
                               BigRational(0), BigRational(1), 5));
  CHECK(b == BigRational::ratio(3, 4));
  CHECK(matrix_element_sq_normalized_exact(2, 0, matter, matter, eng) ==
        BigRational::ratio(3, 2));
}

TEST_CASE("exact B equals the oracle assembly for mixed weights, n+m <= 4") {
  BigRational b2 = BigRational::ratio(1, 2);
  BigRational bp2 = BigRational::ratio(1, 4);
  for (long N : {5L, 10L}) {
    CorrelatorEngine eng(N, NumericMode::exact_rational);
    ExactWeights signal = weights(b2);
    ExactWeights pump = weights(bp2);
    for (int m = 1; m <= 4; ++m)
      for (int n = 0; m + n <= 4; ++n) {
        BigRational mine = bosonicity_exact(m, n, pump, signal, eng);
        BigRational truth = oracle_bosonicity(
            m, n, BigRational(1) - b2, b2, BigRational(1) - bp2, bp2, N);
        CHECK(mine == truth);
      }
  }
}

TEST_CASE("float B tracks exact B to 1e-10") {
  DeviceConfig small = load_config("total_electrons = 12\n");
  RateModel model(small);
  CorrelatorEngine eng(12, NumericMode::exact_rational);
  for (int m = 1; m <= 5; ++m)
    for (int n = 0; m + n <= 6; ++n) {
      double exact =
          bosonicity_exact(m, n, weights(BigRational::ratio(1, 4)),
                           weights(BigRational::ratio(1, 2)), eng)
              .to_double();
      double approx = model.bosonicity_weights(m, n, 0.25, 0.5).B;
      CHECK(approx == doctest::Approx(exact).epsilon(1e-10));
    }
}

TEST_CASE("plain (m,n) exchange is NOT a symmetry; detailed balance is") {
  // The literal exchange m<->n with pump<->signal fails: at N=5, pure
  // matter, B(2,1) = 4/9 but B(1,2) = 1/2. What does hold exactly is the
  // reverse-process identity B(m, n, pump, signal) =
  // B(n+1, m-1, signal, pump), i.e. the squared matrix element is shared
  // by the transition and its reverse.
  CorrelatorEngine eng(5, NumericMode::exact_rational);
  ExactWeights matter = weights(BigRational(1));
  CHECK(bosonicity_exact(2, 1, matter, matter, eng) ==
        BigRational::ratio(4, 9));
  CHECK(bosonicity_exact(1, 2, matter, matter, eng) ==
        BigRational::ratio(1, 2));

  ExactWeights wa = weights(BigRational::ratio(1, 2));
  ExactWeights wb = weights(BigRational::ratio(3, 4));
  for (long N : {5L, 7L, 10L}) {
    CorrelatorEngine e2(N, NumericMode::exact_rational);
    for (int m = 1; m <= 5; ++m)
      for (int n = 0; m + n <= 6; ++n) {
        if (n + 1 < 1 || m - 1 < 1) continue;
        CHECK(bosonicity_exact(m, n, wa, wb, e2) ==
              bosonicity_exact(n + 1, m - 1, wb, wa, e2));
      }
  }
}

TEST_CASE("zeta fit: matter near 1, photon exactly 0, mixed in between") {
  DeviceConfig c = load_config("");
  RateModel model(c);
  std::vector<int> grid;
  for (int m = 2; m <= 200; m += 9) grid.push_back(m);

  ZetaFit matter = model.zeta_fit(1.0, 1.0, grid);
  CHECK(matter.zeta == doctest::Approx(1.0).epsilon(0.05));
  CHECK(matter.zeta == doctest::Approx(0.993159).epsilon(1e-4));

  ZetaFit photon = model.zeta_fit(0.0, 0.0, grid);
  CHECK(photon.zeta == 0.0);
  CHECK(photon.max_residual <= 1e-12);

  // Equal-mix modes under the amplitude convention (|beta| = 0.5, so
  // |beta|^2 = 0.25): zeta falls strictly inside (0, 1).
  ZetaFit mixed = model.zeta_fit(0.25, 0.25, grid);
  CHECK(mixed.zeta > 0.0);
  CHECK(mixed.zeta < 1.0);
  CHECK(mixed.zeta == doctest::Approx(0.780661).epsilon(1e-4));

  // Reading the same figure label as |beta|^2 = 0.5 instead pushes zeta
  // above 1, outside the documented range; this is one of the two
  // internal checks that pin the amplitude convention as the default.
  ZetaFit squared = model.zeta_fit(0.5, 0.5, grid, 1.0);
  CHECK(squared.zeta > 1.0);
  CHECK(squared.zeta == doctest::Approx(1.194367).epsilon(1e-4));

  // The fit refuses grids outside its validity window.
  CHECK_THROWS_AS(model.zeta_fit(1.0, 1.0, {2, 500}), std::invalid_argument);
}

TEST_CASE("rate vs pump density is increasing and slightly sub-linear") {
  const DeviceConfig& c = gaas();
  RateModel model(c);
  ScatteringGeometry g = default_geometry(c);
  double prev = 0.0;
  for (int m = 50; m <= 500; m += 50) {
    double gamma = model.scattering_rate(m, 0.0, g).gamma_sc;
    CHECK(gamma > prev);
    // B < 1 bends the curve below the ideal-boson line.
    double doubled = model.scattering_rate(2.0 * m, 0.0, g).gamma_sc;
    CHECK(doubled < 2.0 * gamma);
    CHECK(doubled > 1.5 * gamma);
    prev = gamma;
  }
}

TEST_CASE("form factor: constant model and infinite-well overlap") {
  CHECK(form_factor(0.0, FormFactorModel::constant) == 0.1);
  CHECK(form_factor(3.7, FormFactorModel::constant) == 0.1);
  CHECK(form_factor(1.0, FormFactorModel::constant, 0.2) == 0.2);

  double f0 = form_factor_infinite_well_limit();
  // sigma -> 0 continuity to 1e-6 relative.
  CHECK(form_factor(1e-6, FormFactorModel::infinite_well) ==
        doctest::Approx(f0).epsilon(1e-6));
  // The infinite-barrier limit lands at the classic ~0.1.
  CHECK(f0 == doctest::Approx(0.0995).epsilon(2e-3));
  // Non-increasing with momentum transfer on [0, 5].
  double prev = f0;
  for (int i = 1; i <= 20; ++i) {
    double sigma = 0.25 * i;
    double f = form_factor(sigma, FormFactorModel::infinite_well);
    CHECK(f <= prev + 1e-12);
    CHECK(f > 0.0);
    prev = f;
  }
  CHECK_THROWS_AS(form_factor(-1.0, FormFactorModel::constant),
                  std::invalid_argument);
}

TEST_CASE("scattering rate: decomposition, stimulation ratio, edge cases") {
  const DeviceConfig& c = gaas();
  RateModel model(c);
  ScatteringGeometry g = default_geometry(c);

  RateResult r = model.scattering_rate(220.0, 0.0, g);
  double product = r.stimulation * r.bosonicity * r.signal_beta_sq *
                   r.pump_beta_sq * r.pump_density * r.phonon_quality *
                   r.coupling_prefactor * r.detuning_factor;
  CHECK(r.gamma_sc == doctest::Approx(product).epsilon(1e-12));
  CHECK(r.detuning_factor == 1.0);

  // Gamma(m, n) / Gamma(m, 0) = (n+1) B(m,n) / B(m,0) exactly.
  for (double n : {1.0, 5.0, 20.0}) {
    RateResult rn = model.scattering_rate(220.0, n, g);
    double lhs = rn.gamma_sc / r.gamma_sc;
    double rhs = (n + 1.0) * rn.bosonicity / r.bosonicity;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }

  CHECK(model.scattering_rate(0.0, 0.0, g).gamma_sc == 0.0);

  // Documented order-of-magnitude anchor: at the quoted pump density the
  // spontaneous rate is comparable to the 5 ps^-1 loss rate (factor <= 5).
  double m_at_density = units::density_from_cm2(1.1e11) * c.surface();
  double gamma = model.scattering_rate(m_at_density, 0.0, g).gamma_sc;
  CHECK(gamma > 1.0);
  CHECK(gamma < 25.0);
  MESSAGE("gamma_sc at 1.1e11 cm^-2: ", gamma, " ps^-1");

  // Lorentzian detuning extension: off by default, 1 at zero detuning.
  ScatteringGeometry detuned = g;
  detuned.detuning = c.gamma_LO();
  RateResult rd = model.scattering_rate(220.0, 0.0, detuned, true);
  CHECK(rd.detuning_factor == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("inset shape: amplitude-0.5 modes are more bosonic than matter") {
  RateModel model(gaas());
  double prev_mixed = 1.0, prev_matter = 1.0;
  for (int m = 50; m <= 500; m += 50) {
    double mixed = model.bosonicity_weights(m, 0, 0.25, 0.25).B;
    double matter = model.bosonicity_weights(m, 0, 1.0, 1.0).B;
    CHECK(mixed > matter);
    CHECK(mixed < prev_mixed);
    CHECK(matter < prev_matter);
    prev_mixed = mixed;
    prev_matter = matter;
    // Under the squared reading (|beta|^2 = 0.5) the ordering inverts;
    // the second internal check pinning the amplitude convention.
    CHECK(model.bosonicity_weights(m, 0, 0.5, 0.5).B < matter);
  }
  // Pure-matter B follows (N-m)/(N-1) on the nose; kept as a regression
  // anchor for the whole n = 0 chain.
  double N = gaas().total_electrons;
  CHECK(model.bosonicity_weights(350, 0, 1.0, 1.0).B ==
        doctest::Approx((N - 350.0) / (N - 1.0)).epsilon(1e-10));
}

TEST_CASE("interpolated B is continuous and matches nodes") {
  RateModel model(gaas());
  double node = model.bosonicity_weights(40, 2, 0.25, 0.5).B;
  CHECK(model.bosonicity_interpolated(40.0, 2.0, 0.25, 0.5) ==
        doctest::Approx(node).epsilon(1e-15));
  double left = model.bosonicity_interpolated(40.499, 2.0, 0.25, 0.5);
  double right = model.bosonicity_interpolated(40.501, 2.0, 0.25, 0.5);
  CHECK(left == doctest::Approx(right).epsilon(1e-3));
}

TEST_CASE("occupation cap raises a clear error") {
  DeviceConfig c = load_config("total_electrons = 100\n");
  RateModel model(c);
  CHECK_THROWS_AS(model.bosonicity_weights(80, 0, 0.5, 0.5),
                  OccupationCapError);
}
