#include "polsim/correlator.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <utility>
#include <vector>

namespace polsim {

std::string CorrelatorValue::to_string() const {
  if (mode == NumericMode::exact_rational) return exact.to_string();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", slog.to_double());
  return buf;
}

std::size_t CorrelatorEngine::default_memo_budget() {
  if (const char* env = std::getenv("POLSIM_MEMO_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 100000000;  // 1e8 entries
}

CorrelatorEngine::CorrelatorEngine(long N, NumericMode mode,
                                   std::size_t memo_budget)
    : N_(N), mode_(mode), budget_(memo_budget) {
  if (N < 2)
    throw std::invalid_argument("CorrelatorEngine: N must be >= 2");
}

std::size_t CorrelatorEngine::memo_size() const {
  std::shared_lock lock(mutex_);
  return mode_ == NumericMode::exact_rational ? memo_exact_.size()
                                              : memo_float_.size();
}

std::uint64_t CorrelatorEngine::pack(long n, long m, long s, long r) {
  return (static_cast<std::uint64_t>(n) << 48) |
         (static_cast<std::uint64_t>(m) << 32) |
         (static_cast<std::uint64_t>(s) << 16) | static_cast<std::uint64_t>(r);
}

namespace {

constexpr int kMaxDepth = 100000;
constexpr long kMaxIndex = 0xffff;

// log(k!) for k <= kMaxIndex, built once; avoids std::lgamma's signgam
// traffic on hot concurrent paths.
const double* log_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kMaxIndex + 1);
    t[0] = 0.0;
    for (long k = 1; k <= kMaxIndex; ++k)
      t[k] = std::lgamma(static_cast<double>(k) + 1.0);
    return t;
  }();
  return table.data();
}

bool selection_rule_holds(long n, long m, long s, long r) {
  return n + m == s + r + 1;
}

// Lexicographic canonicalization under the swap symmetry
// K(n,m,s,r) = K(m,n,r,s).
void canonicalize_swap(long& n, long& m, long& s, long& r) {
  if (m < n || (m == n && r < s)) {
    std::swap(n, m);
    std::swap(s, r);
  }
}

}  // namespace

SignedLog CorrelatorEngine::k_float(long n, long m, long s, long r,
                                    int depth) {
  if (depth > kMaxDepth)
    throw CorrelatorBudgetError("correlator recursion exceeded depth guard");
  if (!selection_rule_holds(n, m, s, r)) return SignedLog::zero();
  if (s == -1) {
    std::swap(n, m);
    std::swap(s, r);
  }
  if (r == -1) {
    if (m != 0 || s != n) return SignedLog::zero();
    if (n == 0) return SignedLog::from_double(1.0);
    return k_float(n, 0, n - 1, 0, depth + 1);
  }
  if (n < 0 || m < 0 || s < 0 || r < 0) return SignedLog::zero();
  canonicalize_swap(n, m, s, r);
  if (n > 0xffff || m > 0xffff || s > 0xffff || r > 0xffff)
    throw CorrelatorBudgetError("correlator index exceeds 65535");

  const std::uint64_t key = pack(n, m, s, r);
  {
    std::shared_lock lock(mutex_);
    auto it = memo_float_.find(key);
    if (it != memo_float_.end()) return it->second;
  }

  SignedLog acc = SignedLog::zero();
  if (m == r && n == s + 1)
    acc = acc + k_float(n - 1, m, n - 1, m - 1, depth + 1);
  if (m == r + 1 && n == s)
    acc = acc + k_float(n, m - 1, n - 1, m - 1, depth + 1);

  bool any_bracket = n >= 2 || m >= 2 || (n >= 1 && m >= 1);
  if (any_bracket) {
    const double* lf = log_factorial_table();
    double logcoef =
        lf[s] + lf[r] - lf[n] - lf[m] - std::log(static_cast<double>(N_));
    SignedLog coef = SignedLog::from_log(logcoef, 1, 4e-16);
    if (n >= 2) {
      SignedLog c = SignedLog::from_double(static_cast<double>(n) * (n - 1));
      acc = acc - coef * c * k_float(s, r, n - 2, m, depth + 1);
    }
    if (m >= 2) {
      SignedLog c = SignedLog::from_double(static_cast<double>(m) * (m - 1));
      acc = acc - coef * c * k_float(s, r, n, m - 2, depth + 1);
    }
    if (n >= 1 && m >= 1) {
      SignedLog c =
          SignedLog::from_double(2.0 * static_cast<double>(n) * m);
      acc = acc - coef * c * k_float(s, r, n - 1, m - 1, depth + 1);
    }
  }
  if (acc.sign != 0 && !std::isfinite(acc.logmag))
    throw CorrelatorOverflowError(
        "float-mode correlator overflowed; use rational mode");

  {
    std::unique_lock lock(mutex_);
    if (memo_float_.size() >= budget_)
      throw CorrelatorBudgetError(
          "correlator memo budget of " + std::to_string(budget_) +
          " entries exceeded (POLSIM_MEMO_BUDGET overrides)");
    memo_float_.emplace(key, acc);
  }
  return acc;
}

BigRational CorrelatorEngine::k_exact(long n, long m, long s, long r,
                                      int depth) {
  if (depth > kMaxDepth)
    throw CorrelatorBudgetError("correlator recursion exceeded depth guard");
  if (!selection_rule_holds(n, m, s, r)) return BigRational(0);
  if (s == -1) {
    std::swap(n, m);
    std::swap(s, r);
  }
  if (r == -1) {
    if (m != 0 || s != n) return BigRational(0);
    if (n == 0) return BigRational(1);
    return k_exact(n, 0, n - 1, 0, depth + 1);
  }
  if (n < 0 || m < 0 || s < 0 || r < 0) return BigRational(0);
  canonicalize_swap(n, m, s, r);
  if (n > 0xffff || m > 0xffff || s > 0xffff || r > 0xffff)
    throw CorrelatorBudgetError("correlator index exceeds 65535");

  const std::uint64_t key = pack(n, m, s, r);
  {
    std::shared_lock lock(mutex_);
    auto it = memo_exact_.find(key);
    if (it != memo_exact_.end()) return it->second;
  }

  BigRational acc;
  if (m == r && n == s + 1) acc += k_exact(n - 1, m, n - 1, m - 1, depth + 1);
  if (m == r + 1 && n == s) acc += k_exact(n, m - 1, n - 1, m - 1, depth + 1);

  bool any_bracket = n >= 2 || m >= 2 || (n >= 1 && m >= 1);
  if (any_bracket) {
    BigRational coef(
        BigInt::factorial(static_cast<unsigned>(s)) *
            BigInt::factorial(static_cast<unsigned>(r)),
        BigInt::factorial(static_cast<unsigned>(n)) *
            BigInt::factorial(static_cast<unsigned>(m)) * BigInt(N_));
    if (n >= 2)
      acc -= coef * BigRational(n * (n - 1)) *
             k_exact(s, r, n - 2, m, depth + 1);
    if (m >= 2)
      acc -= coef * BigRational(m * (m - 1)) *
             k_exact(s, r, n, m - 2, depth + 1);
    if (n >= 1 && m >= 1)
      acc -= coef * BigRational(2 * n * m) *
             k_exact(s, r, n - 1, m - 1, depth + 1);
  }

  {
    std::unique_lock lock(mutex_);
    if (memo_exact_.size() >= budget_)
      throw CorrelatorBudgetError(
          "correlator memo budget of " + std::to_string(budget_) +
          " entries exceeded (POLSIM_MEMO_BUDGET overrides)");
    memo_exact_.emplace(key, acc);
  }
  return acc;
}

CorrelatorValue CorrelatorEngine::K(long n, long m, long s, long r) {
  if (n < 0 || m < 0 || s < -1 || r < -1)
    throw std::invalid_argument(
        "K: indices must satisfy n,m >= 0 and s,r >= -1");
  CorrelatorValue v;
  v.mode = mode_;
  if (mode_ == NumericMode::exact_rational)
    v.exact = k_exact(n, m, s, r, 0);
  else
    v.slog = k_float(n, m, s, r, 0);
  return v;
}

CorrelatorValue CorrelatorEngine::f(long m, long n) {
  if (m < 1 || n < 0)
    throw std::invalid_argument("f_m^n requires m >= 1, n >= 0");
  CorrelatorValue v;
  v.mode = mode_;
  if (n == 0) {
    // The first term carries coefficient n/m = 0; skip it so its r = -1
    // index is never formed.
    return K(m - 1, 1, m - 1, 0);
  }
  if (mode_ == NumericMode::exact_rational) {
    BigRational first = k_exact(m - 1, n + 1, m, n - 1, 0);
    BigRational second = k_exact(m - 1, n + 1, m - 1, n, 0);
    v.exact = BigRational(BigInt(n), BigInt(m)) * first + second;
  } else {
    SignedLog first = k_float(m - 1, n + 1, m, n - 1, 0);
    SignedLog second = k_float(m - 1, n + 1, m - 1, n, 0);
    v.slog = SignedLog::from_double(static_cast<double>(n) / m) * first +
             second;
  }
  return v;
}

CorrelatorValue CorrelatorEngine::norm_correlator(long n, long m) {
  if (n < 0 || m < 0)
    throw std::invalid_argument("norm_correlator requires n, m >= 0");
  return K(n, m, n, m - 1);
}

}  // namespace polsim
