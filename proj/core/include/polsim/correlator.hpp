#pragma once

#include <cstdint>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "polsim/bigint.hpp"
#include "polsim/signed_log.hpp"

namespace polsim {

enum class NumericMode { exact_rational, signed_log_float };

class CorrelatorBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class CorrelatorOverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Value of one correlator in the engine's numeric mode. Rational-mode
/// values are exact; float-mode values are (sign, log-magnitude) pairs with
/// an accumulated relative-error estimate.
struct CorrelatorValue {
  NumericMode mode = NumericMode::signed_log_float;
  SignedLog slog;
  BigRational exact;

  double to_double() const {
    return mode == NumericMode::exact_rational ? exact.to_double()
                                               : slog.to_double();
  }
  double error_estimate() const {
    return mode == NumericMode::exact_rational ? 0.0 : slog.relerr;
  }
  std::string to_string() const;
};

/// Evaluator for the composite-boson correlators K(n,m,s,r) at fixed Fermi
/// sea size N, via the memoized four-index recurrence
///
///   K(n,m,s,r) = d_{m,r} d_{n,s+1} K(n-1,m,n-1,m-1)
///              + d_{m,r+1} d_{n,s} K(n,m-1,n-1,m-1)
///              - s! r! / (n! m! N) [ n(n-1) K(s,r,n-2,m)
///                                  + m(m-1) K(s,r,n,m-2)
///                                  + 2 n m  K(s,r,n-1,m-1) ]
///
/// together with the selection rule K = 0 unless n+m = s+r+1, the swap
/// symmetry K(n,m,s,r) = K(m,n,r,s), and the boundary convention
/// K(j,0,j,-1) = K(j,0,j-1,0) for j >= 1, K(0,0,0,-1) = 1 (the vacuum
/// norm). The convention extends the stated identity
/// K(n,m,n-1,m) = K(n,m,n,m-1) down to m = 0 and is the unique choice
/// reproducing K(2,0,1,0) = 1 - 1/N.
///
/// The memo cache supports concurrent readers and idempotent inserts;
/// values are independent of evaluation order.
class CorrelatorEngine {
 public:
  CorrelatorEngine(long N, NumericMode mode,
                   std::size_t memo_budget = default_memo_budget());

  long N() const { return N_; }
  NumericMode mode() const { return mode_; }
  std::size_t memo_size() const;
  std::size_t memo_budget() const { return budget_; }

  /// K(n,m,s,r). Indices must satisfy n,m,s >= 0 and r >= -1; keys violating
  /// the selection rule return exact zero. An r = -1 index outside the
  /// boundary-convention pattern (j,0,j,-1) also returns zero (only the
  /// convention pattern is reachable from the recurrence).
  CorrelatorValue K(long n, long m, long s, long r);

  /// f_m^n = (n/m) K(m-1,n+1,m,n-1) + K(m-1,n+1,m-1,n); the n = 0 case
  /// drops the first term without touching its r = -1 index.
  CorrelatorValue f(long m, long n);

  /// K(n,m,n,m-1), the matter normalization factor.
  CorrelatorValue norm_correlator(long n, long m);

  /// Default recursion budget in memo entries; overridable with the
  /// POLSIM_MEMO_BUDGET environment variable.
  static std::size_t default_memo_budget();

 private:
  SignedLog k_float(long n, long m, long s, long r, int depth);
  BigRational k_exact(long n, long m, long s, long r, int depth);

  static std::uint64_t pack(long n, long m, long s, long r);

  long N_;
  NumericMode mode_;
  std::size_t budget_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::uint64_t, SignedLog> memo_float_;
  std::unordered_map<std::uint64_t, BigRational> memo_exact_;
};

}  // namespace polsim
