#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace polsim {

/// Signed log-magnitude scalar: value = sign * exp(logmag).
///
/// The correlator recurrence multiplies factorial ratios against products of
/// near-unity factors; at occupation numbers of a few hundred both the
/// ratios and the correlators themselves leave the dynamic range of a plain
/// double, so all float-mode arithmetic is carried in log space. `relerr`
/// accumulates a crude relative-error bound: additions widen it by the
/// cancellation ratio, multiplications add the operands' bounds.
struct SignedLog {
  double logmag = -std::numeric_limits<double>::infinity();
  double relerr = 0.0;
  std::int8_t sign = 0;

  static SignedLog zero() { return {}; }

  static SignedLog from_double(double v, double err = 0.0) {
    SignedLog s;
    if (v == 0.0) return s;
    s.sign = v > 0 ? 1 : -1;
    s.logmag = std::log(std::fabs(v));
    s.relerr = err;
    return s;
  }

  static SignedLog from_log(double logmag, int sign, double err = 0.0) {
    SignedLog s;
    if (sign == 0) return s;
    s.sign = sign > 0 ? 1 : -1;
    s.logmag = logmag;
    s.relerr = err;
    return s;
  }

  bool is_zero() const { return sign == 0; }

  double to_double() const {
    if (sign == 0) return 0.0;
    return static_cast<double>(sign) * std::exp(logmag);
  }

  SignedLog operator-() const {
    SignedLog r = *this;
    r.sign = static_cast<std::int8_t>(-r.sign);
    return r;
  }

  friend SignedLog operator*(const SignedLog& a, const SignedLog& b) {
    if (a.sign == 0 || b.sign == 0) return {};
    SignedLog r;
    r.sign = static_cast<std::int8_t>(a.sign * b.sign);
    r.logmag = a.logmag + b.logmag;
    r.relerr = a.relerr + b.relerr + std::numeric_limits<double>::epsilon();
    return r;
  }

  friend SignedLog operator+(const SignedLog& a, const SignedLog& b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    const SignedLog& hi = a.logmag >= b.logmag ? a : b;
    const SignedLog& lo = a.logmag >= b.logmag ? b : a;
    double d = lo.logmag - hi.logmag;  // <= 0
    SignedLog r;
    if (hi.sign == lo.sign) {
      r.sign = hi.sign;
      r.logmag = hi.logmag + std::log1p(std::exp(d));
      r.relerr = std::fmax(hi.relerr, lo.relerr) +
                 std::numeric_limits<double>::epsilon();
      return r;
    }
    double m = 1.0 - std::exp(d);  // in [0, 1]
    if (m == 0.0) {
      // Exact cancellation of the representations; propagate the bound as
      // an absolute statement is impossible in a pure relative scheme, so
      // report zero with the worst operand error.
      r.relerr = std::fmax(hi.relerr, lo.relerr);
      return r;
    }
    r.sign = hi.sign;
    r.logmag = hi.logmag + std::log(m);
    // |a|+|b| over |result| measures cancellation amplification.
    double amplification = (1.0 + std::exp(d)) / m;
    r.relerr = std::fmax(hi.relerr, lo.relerr) * amplification +
               std::numeric_limits<double>::epsilon() * amplification;
    return r;
  }

  friend SignedLog operator-(const SignedLog& a, const SignedLog& b) {
    return a + (-b);
  }
};

}  // namespace polsim
