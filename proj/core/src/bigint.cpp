#include "polsim/bigint.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace polsim {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(std::int64_t v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  // Avoid overflow on INT64_MIN.
  std::uint64_t u = v < 0 ? ~static_cast<std::uint64_t>(v) + 1
                          : static_cast<std::uint64_t>(v);
  mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffu));
  if (u >> 32) mag_.push_back(static_cast<std::uint32_t>(u >> 32));
}

BigInt BigInt::from_string(const std::string& decimal) {
  BigInt r;
  std::size_t i = 0;
  int sign = 1;
  if (i < decimal.size() && (decimal[i] == '-' || decimal[i] == '+')) {
    if (decimal[i] == '-') sign = -1;
    ++i;
  }
  if (i == decimal.size()) throw std::invalid_argument("BigInt: empty string");
  for (; i < decimal.size(); ++i) {
    char c = decimal[i];
    if (c < '0' || c > '9')
      throw std::invalid_argument("BigInt: bad digit in \"" + decimal + "\"");
    r *= BigInt(10);
    r += BigInt(c - '0');
  }
  if (sign < 0) r = -r;
  return r;
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a,
                    const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  const auto& lo = a.size() < b.size() ? a : b;
  const auto& hi = a.size() < b.size() ? b : a;
  std::vector<std::uint32_t> out;
  out.reserve(hi.size() + 1);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < hi.size(); ++i) {
    std::uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
    out.push_back(static_cast<std::uint32_t>(s & 0xffffffffu));
    carry = s >> 32;
  }
  if (carry) out.push_back(static_cast<std::uint32_t>(carry));
  return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(a.size());
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow -
                     (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
    if (d < 0) {
      d += static_cast<std::int64_t>(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    out.push_back(static_cast<std::uint32_t>(d));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<std::uint32_t> BigInt::mul_mag(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint32_t> out(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t cur = out[i + j] +
                          static_cast<std::uint64_t>(a[i]) * b[j] + carry;
      out[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    std::size_t k = i + b.size();
    while (carry) {
      std::uint64_t cur = out[k] + carry;
      out[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt& BigInt::operator+=(const BigInt& rhs) {
  if (rhs.sign_ == 0) return *this;
  if (sign_ == 0) {
    *this = rhs;
    return *this;
  }
  if (sign_ == rhs.sign_) {
    mag_ = add_mag(mag_, rhs.mag_);
    return *this;
  }
  int c = cmp_mag(mag_, rhs.mag_);
  if (c == 0) {
    sign_ = 0;
    mag_.clear();
  } else if (c > 0) {
    mag_ = sub_mag(mag_, rhs.mag_);
  } else {
    mag_ = sub_mag(rhs.mag_, mag_);
    sign_ = rhs.sign_;
  }
  return *this;
}

BigInt& BigInt::operator-=(const BigInt& rhs) { return *this += -rhs; }

BigInt& BigInt::operator*=(const BigInt& rhs) {
  sign_ *= rhs.sign_;
  mag_ = mul_mag(mag_, rhs.mag_);
  if (mag_.empty()) sign_ = 0;
  return *this;
}

void BigInt::divrem(const BigInt& num, const BigInt& den, BigInt& quot,
                    BigInt& rem) {
  if (den.sign_ == 0) throw std::domain_error("BigInt: division by zero");
  int c = cmp_mag(num.mag_, den.mag_);
  if (c < 0) {
    quot = BigInt(0);
    rem = num;
    return;
  }
  // Base-2^32 schoolbook long division over the magnitude, bit variant:
  // simple shift-subtract keeps the code short; operand sizes here stay
  // tiny (a few dozen limbs).
  std::vector<std::uint32_t> q(num.mag_.size(), 0);
  BigInt r(0);
  for (std::size_t limb = num.mag_.size(); limb-- > 0;) {
    for (int bit = 31; bit >= 0; --bit) {
      // r = r*2 + next bit
      r.mag_ = add_mag(r.mag_, r.mag_);
      if ((num.mag_[limb] >> bit) & 1u) {
        r.mag_ = add_mag(r.mag_, {1u});
      }
      r.sign_ = r.mag_.empty() ? 0 : 1;
      if (cmp_mag(r.mag_, den.mag_) >= 0) {
        r.mag_ = sub_mag(r.mag_, den.mag_);
        r.sign_ = r.mag_.empty() ? 0 : 1;
        q[limb] |= 1u << bit;
      }
    }
  }
  quot.mag_ = std::move(q);
  quot.trim();
  quot.sign_ = quot.mag_.empty() ? 0 : num.sign_ * den.sign_;
  rem = std::move(r);
  rem.trim();
  rem.sign_ = rem.mag_.empty() ? 0 : num.sign_;
}

BigInt BigInt::operator/(const BigInt& rhs) const {
  BigInt q, r;
  divrem(*this, rhs, q, r);
  return q;
}

BigInt BigInt::operator%(const BigInt& rhs) const {
  BigInt q, r;
  divrem(*this, rhs, q, r);
  return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a.sign_ = a.mag_.empty() ? 0 : 1;
  b.sign_ = b.mag_.empty() ? 0 : 1;
  while (!b.is_zero()) {
    BigInt q, r;
    divrem(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

BigInt BigInt::factorial(unsigned n) {
  BigInt r(1);
  for (unsigned i = 2; i <= n; ++i) r *= BigInt(static_cast<std::int64_t>(i));
  return r;
}

BigInt BigInt::pow(const BigInt& base, unsigned exp) {
  BigInt r(1);
  BigInt b = base;
  while (exp) {
    if (exp & 1u) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

bool BigInt::fits_int64() const {
  if (mag_.size() > 2) return false;
  if (mag_.size() < 2) return true;
  std::uint64_t u =
      (static_cast<std::uint64_t>(mag_[1]) << 32) | mag_[0];
  if (sign_ > 0) return u <= 0x7fffffffffffffffull;
  return u <= 0x8000000000000000ull;
}

std::int64_t BigInt::to_int64() const {
  std::uint64_t u = 0;
  if (mag_.size() >= 1) u |= mag_[0];
  if (mag_.size() >= 2) u |= static_cast<std::uint64_t>(mag_[1]) << 32;
  return sign_ < 0 ? -static_cast<std::int64_t>(u)
                   : static_cast<std::int64_t>(u);
}

double BigInt::to_double() const {
  double r = 0.0;
  for (std::size_t i = mag_.size(); i-- > 0;) {
    r = r * 4294967296.0 + static_cast<double>(mag_[i]);
  }
  return sign_ < 0 ? -r : r;
}

bool BigInt::operator==(const BigInt& rhs) const {
  return sign_ == rhs.sign_ && mag_ == rhs.mag_;
}

std::strong_ordering BigInt::operator<=>(const BigInt& rhs) const {
  if (sign_ != rhs.sign_)
    return sign_ < rhs.sign_ ? std::strong_ordering::less
                             : std::strong_ordering::greater;
  int c = cmp_mag(mag_, rhs.mag_) * (sign_ == 0 ? 0 : sign_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string BigInt::to_string() const {
  if (sign_ == 0) return "0";
  std::string digits;
  BigInt v = *this;
  v.sign_ = 1;
  const BigInt chunk(1000000000);
  while (!v.is_zero()) {
    BigInt q, r;
    divrem(v, chunk, q, r);
    std::uint64_t part = r.is_zero() ? 0 : static_cast<std::uint64_t>(r.to_int64());
    for (int i = 0; i < 9; ++i) {
      digits.push_back(static_cast<char>('0' + part % 10));
      part /= 10;
    }
    v = std::move(q);
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  if (sign_ < 0) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

// ---------------------------------------------------------------------------

BigRational::BigRational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero())
    throw std::domain_error("BigRational: zero denominator");
  reduce();
}

void BigRational::reduce() {
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (g > BigInt(1)) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
}

double BigRational::to_double() const {
  // Exact enough for diagnostics; tests that need exactness compare
  // rationals directly.
  return num_.to_double() / den_.to_double();
}

BigRational BigRational::operator-() const {
  BigRational r = *this;
  r.num_ = -r.num_;
  return r;
}

BigRational& BigRational::operator+=(const BigRational& rhs) {
  num_ = num_ * rhs.den_ + rhs.num_ * den_;
  den_ = den_ * rhs.den_;
  reduce();
  return *this;
}

BigRational& BigRational::operator-=(const BigRational& rhs) {
  return *this += -rhs;
}

BigRational& BigRational::operator*=(const BigRational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  reduce();
  return *this;
}

BigRational& BigRational::operator/=(const BigRational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("BigRational: divide by zero");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  reduce();
  return *this;
}

bool BigRational::operator==(const BigRational& rhs) const {
  return num_ == rhs.num_ && den_ == rhs.den_;
}

std::strong_ordering BigRational::operator<=>(const BigRational& rhs) const {
  return (num_ * rhs.den_) <=> (rhs.num_ * den_);
}

std::string BigRational::to_string() const {
  if (den_ == BigInt(1)) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

// ---------------------------------------------------------------------------

RationalPoly::RationalPoly(BigRational constant) {
  if (!constant.is_zero()) coeffs_.push_back(std::move(constant));
}

const BigRational& RationalPoly::coeff(std::size_t k) const {
  static const BigRational zero;
  return k < coeffs_.size() ? coeffs_[k] : zero;
}

void RationalPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k)
    coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& rhs) {
  if (coeffs_.empty() || rhs.coeffs_.empty()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<BigRational> out(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
      out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

RationalPoly& RationalPoly::scale(const BigRational& c) {
  if (c.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& a : coeffs_) a *= c;
  return *this;
}

RationalPoly& RationalPoly::shift_up(std::size_t k) {
  if (coeffs_.empty() || k == 0) return *this;
  coeffs_.insert(coeffs_.begin(), k, BigRational());
  return *this;
}

BigRational RationalPoly::evaluate_at_inverse(const BigInt& N) const {
  // Horner in x = 1/N.
  BigRational x(BigInt(1), N);
  BigRational acc;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    acc = acc * x + coeffs_[k];
  }
  return acc;
}

bool RationalPoly::operator==(const RationalPoly& rhs) const {
  return coeffs_ == rhs.coeffs_;
}

std::string RationalPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += coeffs_[k].to_string();
    if (k >= 1) s += " x";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

}  // namespace polsim
