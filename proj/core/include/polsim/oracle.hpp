#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "polsim/bigint.hpp"

namespace polsim::oracle {

/// Formal in-plane momentum a*q + b*q', closed under addition/subtraction.
struct Momentum {
  int a = 0;
  int b = 0;
  friend Momentum operator+(Momentum x, Momentum y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend Momentum operator-(Momentum x, Momentum y) {
    return {x.a - y.a, x.b - y.b};
  }
  auto operator<=>(const Momentum&) const = default;
  std::string to_string() const;
};

inline constexpr Momentum kQ{1, 0};
inline constexpr Momentum kQPrime{0, 1};

/// One symbol of the composite-boson algebra: a creation b^dag_p, an
/// annihilation b_p, or the bosonicity-deviation operator D_{p,pp}.
struct Op {
  enum class Kind : std::uint8_t { create, annihilate, deviation };
  Kind kind = Kind::create;
  Momentum p;   // label (first label for D)
  Momentum pp;  // second label, D only

  static Op create(Momentum p) { return {Kind::create, p, {}}; }
  static Op annihilate(Momentum p) { return {Kind::annihilate, p, {}}; }
  static Op deviation(Momentum p, Momentum pp) {
    return {Kind::deviation, p, pp};
  }
  auto operator<=>(const Op&) const = default;
  std::string to_string() const;
};

using OperatorString = std::vector<Op>;

std::string to_string(const OperatorString& s);

/// Sum of operator strings with coefficients polynomial in 1/N; terms with
/// identical normal-ordered strings are merged and zero coefficients
/// dropped.
class SymbolicSum {
 public:
  void add(OperatorString s, RationalPoly coeff);
  const std::map<OperatorString, RationalPoly>& terms() const {
    return terms_;
  }
  std::size_t size() const { return terms_.size(); }
  bool operator==(const SymbolicSum&) const = default;
  std::string to_string() const;

 private:
  std::map<OperatorString, RationalPoly> terms_;
};

class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which admissible rewrite to apply next; the result is independent of the
/// choice (confluence), which the tests exercise with the non-default
/// strategies.
enum class RewriteStrategy { leftmost, rightmost, seeded_random };

struct OracleOptions {
  std::size_t max_input_ops = 20;
  std::size_t max_terms = 1000000;
  RewriteStrategy strategy = RewriteStrategy::leftmost;
  std::uint64_t seed = 0;  // for seeded_random
};

/// Rewrite the string until every annihilation and every D stands to the
/// right of all creations, using
///   b_p b^dag_p'   ->  delta_{p,p'} - D_{p,p'} + b^dag_p' b_p
///   D_{p,pp} b^dag_p'' -> (2/N) b^dag_{p''+pp-p} + b^dag_p'' D_{p,pp}
/// Exact coefficients, polynomial in 1/N.
SymbolicSum normal_order(const OperatorString& s,
                         const OracleOptions& opt = {});

/// Vacuum expectation value as a polynomial in 1/N: only the fully
/// contracted (empty) normal-ordered term survives, since annihilations and
/// D kill |F> on the right and leftover creations kill <F| on the left.
RationalPoly vev_poly(const OperatorString& s, const OracleOptions& opt = {});

/// vev evaluated at a concrete electron number N.
BigRational vev(const OperatorString& s, long N,
                const OracleOptions& opt = {});

/// Net formal momentum carried by the string (creations count +p,
/// annihilations -p, D_{p,pp} counts pp - p).
Momentum net_momentum(const OperatorString& s);

/// Brute-force K(n,m,s,r): builds b_q^n b_q'^m b_q^dag^s b_q'^dag^r b_Q^dag
/// with Q = q(n-s) + q'(m-r), takes the vev and divides by n! m!. The
/// r = -1 boundary convention is evaluated through its defining right-hand
/// side K(n,0,n-1,0).
RationalPoly k_oracle_poly(int n, int m, int s, int r,
                           const OracleOptions& opt = {});
BigRational k_oracle(int n, int m, int s, int r, long N,
                     const OracleOptions& opt = {});

}  // namespace polsim::oracle
