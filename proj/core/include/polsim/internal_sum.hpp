#pragma once

#include <cmath>
#include <vector>

#include "polsim/signed_log.hpp"

namespace polsim::detail {

/// Compensated reduction of signed-log terms: rescale by the largest
/// magnitude, Kahan-sum in linear space, return to log space. Keeps an
/// accumulated relative-error estimate including cancellation.
inline SignedLog sum_signed_log(const std::vector<SignedLog>& terms) {
  double maxlog = -std::numeric_limits<double>::infinity();
  for (const SignedLog& t : terms)
    if (t.sign != 0 && t.logmag > maxlog) maxlog = t.logmag;
  if (!std::isfinite(maxlog)) return SignedLog::zero();

  double sum = 0.0, comp = 0.0, abs_sum = 0.0, err_weighted = 0.0;
  for (const SignedLog& t : terms) {
    if (t.sign == 0) continue;
    double v = static_cast<double>(t.sign) * std::exp(t.logmag - maxlog);
    double y = v - comp;
    double u = sum + y;
    comp = (u - sum) - y;
    sum = u;
    abs_sum += std::fabs(v);
    err_weighted += std::fabs(v) * t.relerr;
  }
  if (sum == 0.0) return SignedLog::zero();
  double amplification = abs_sum / std::fabs(sum);
  double relerr = err_weighted / abs_sum * amplification +
                  static_cast<double>(terms.size()) *
                      std::numeric_limits<double>::epsilon() * amplification;
  return SignedLog::from_log(maxlog + std::log(std::fabs(sum)),
                             sum > 0.0 ? 1 : -1, relerr);
}

}  // namespace polsim::detail
