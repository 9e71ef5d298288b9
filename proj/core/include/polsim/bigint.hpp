#pragma once

#include <cstdint>
#include <compare>
#include <string>
#include <vector>

namespace polsim {

/// Arbitrary-precision signed integer, little-endian base-2^32 limbs.
/// Only the operations the toolkit needs: ring arithmetic, division with
/// remainder, gcd, decimal I/O and double conversion.
class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t v);
  static BigInt from_string(const std::string& decimal);

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  bool fits_int64() const;
  std::int64_t to_int64() const;  // precondition: fits_int64()
  double to_double() const;

  BigInt operator-() const;
  BigInt& operator+=(const BigInt& rhs);
  BigInt& operator-=(const BigInt& rhs);
  BigInt& operator*=(const BigInt& rhs);
  friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
  friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
  friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }

  /// Truncated division (quotient rounds toward zero, remainder has the
  /// sign of the dividend). Divisor must be nonzero.
  static void divrem(const BigInt& num, const BigInt& den, BigInt& quot,
                     BigInt& rem);
  BigInt operator/(const BigInt& rhs) const;
  BigInt operator%(const BigInt& rhs) const;

  static BigInt gcd(BigInt a, BigInt b);  // always >= 0
  static BigInt factorial(unsigned n);
  static BigInt pow(const BigInt& base, unsigned exp);

  bool operator==(const BigInt& rhs) const;
  std::strong_ordering operator<=>(const BigInt& rhs) const;

  std::string to_string() const;

 private:
  int sign_ = 0;                    // -1, 0, +1
  std::vector<std::uint32_t> mag_;  // empty iff sign_ == 0

  void trim();
  static int cmp_mag(const std::vector<std::uint32_t>& a,
                     const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(
      const std::vector<std::uint32_t>& a,
      const std::vector<std::uint32_t>& b);
  // precondition: a >= b
  static std::vector<std::uint32_t> sub_mag(
      const std::vector<std::uint32_t>& a,
      const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> mul_mag(
      const std::vector<std::uint32_t>& a,
      const std::vector<std::uint32_t>& b);
};

/// Exact rational with gcd-reduced representation, denominator > 0.
class BigRational {
 public:
  BigRational() : num_(0), den_(1) {}
  BigRational(std::int64_t v) : num_(v), den_(1) {}
  BigRational(BigInt numerator, BigInt denominator);
  static BigRational ratio(std::int64_t num, std::int64_t den) {
    return BigRational(BigInt(num), BigInt(den));
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }
  double to_double() const;

  BigRational operator-() const;
  BigRational& operator+=(const BigRational& rhs);
  BigRational& operator-=(const BigRational& rhs);
  BigRational& operator*=(const BigRational& rhs);
  BigRational& operator/=(const BigRational& rhs);
  friend BigRational operator+(BigRational a, const BigRational& b) {
    return a += b;
  }
  friend BigRational operator-(BigRational a, const BigRational& b) {
    return a -= b;
  }
  friend BigRational operator*(BigRational a, const BigRational& b) {
    return a *= b;
  }
  friend BigRational operator/(BigRational a, const BigRational& b) {
    return a /= b;
  }

  bool operator==(const BigRational& rhs) const;
  std::strong_ordering operator<=>(const BigRational& rhs) const;

  /// "p/q" (or just "p" when q == 1).
  std::string to_string() const;

 private:
  BigInt num_;
  BigInt den_;
  void reduce();
};

/// Polynomial in the small parameter x = 1/N with exact rational
/// coefficients; coeffs_[k] multiplies x^k. One symbolic computation then
/// serves every concrete electron number N.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(BigRational constant);
  static RationalPoly one() { return RationalPoly(BigRational(1)); }

  bool is_zero() const { return coeffs_.empty(); }
  std::size_t degree_bound() const { return coeffs_.size(); }
  const BigRational& coeff(std::size_t k) const;

  RationalPoly& operator+=(const RationalPoly& rhs);
  RationalPoly& operator*=(const RationalPoly& rhs);
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) {
    return a += b;
  }
  friend RationalPoly operator*(RationalPoly a, const RationalPoly& b) {
    return a *= b;
  }
  RationalPoly& scale(const BigRational& c);
  /// Multiply by x^k (i.e. by 1/N^k).
  RationalPoly& shift_up(std::size_t k);

  BigRational evaluate_at_inverse(const BigInt& N) const;

  bool operator==(const RationalPoly& rhs) const;
  std::string to_string() const;  // e.g. "1 - 2 x + 1/2 x^2", x = 1/N

 private:
  std::vector<BigRational> coeffs_;
  void trim();
};

}  // namespace polsim
