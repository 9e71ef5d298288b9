#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polsim/numeric.hpp"
#include "polsim/rates.hpp"

namespace polsim {

namespace {

// Envelope-density difference of the 1->2 infinite-barrier well in the
// dimensionless coordinate x = z / L_QW:
//   |phi_2|^2 - |phi_1|^2 = cos(2 pi x) - cos(4 pi x),  integral zero.
double density_difference(double x) {
  return std::cos(2.0 * std::numbers::pi * x) -
         std::cos(4.0 * std::numbers::pi * x);
}

// Phonon overlap kernel; expm1 keeps the sigma -> 0 limit (-u) stable.
double kernel(double sigma, double u) {
  if (sigma == 0.0) return -u;
  return std::expm1(-sigma * u) / sigma;
}

// F_sigma = (pi / sigma) Int Int G(x) G(x') exp(-sigma |x-x'|) dx dx'.
// The pi/sigma normalization comes from the q_z sum over the bulk-phonon
// Coulomb kernel, sum_qz |I(q_z)|^2/(q^2+q_z^2) = (pi/q) Int Int g g
// e^{-q|dz|}; it lands the sigma -> 0 infinite-barrier value at the
// classic 0.0995 ~ 0.1.
double overlap_integral(double sigma, double tol) {
  auto inner = [&](double x) {
    auto g = [&](double xp) {
      return density_difference(xp) * kernel(sigma, std::fabs(x - xp));
    };
    // Split at the |x - x'| kink.
    return numeric::adaptive_simpson(g, 0.0, x, tol) +
           numeric::adaptive_simpson(g, x, 1.0, tol);
  };
  auto outer = [&](double x) { return density_difference(x) * inner(x); };
  return std::numbers::pi * numeric::adaptive_simpson(outer, 0.0, 1.0, tol);
}

}  // namespace

double form_factor(double sigma, FormFactorModel model, double f0) {
  if (sigma < 0.0)
    throw std::invalid_argument("form_factor: sigma must be >= 0");
  if (model == FormFactorModel::constant) return f0;
  double coarse = overlap_integral(sigma, 1e-9);
  double fine = overlap_integral(sigma, 1e-11);
  if (std::fabs(fine - coarse) >
      std::fmax(1e-8, 1e-6 * std::fabs(fine)))
    throw std::runtime_error(
        "form_factor: overlap quadrature did not converge");
  return fine;
}

double form_factor_infinite_well_limit() {
  static const double value =
      form_factor(0.0, FormFactorModel::infinite_well);
  return value;
}

}  // namespace polsim
