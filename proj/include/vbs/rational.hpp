// Exact integers and rationals.

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace vbs {

using Integer = mpz_class;

/// Number of bits in |x| (0 for x == 0).
std::uint64_t bit_length(const Integer& x);

/// x^e for a machine-sized exponent.
Integer ipow(const Integer& x, std::uint64_t e);

Integer parse_integer(std::string_view text);

/// Fraction kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const Integer& value) : value_(value) {}

  /// Throws Errc::ZeroDenominator when den == 0.
  Rational(const Integer& num, const Integer& den);

  /// Parses "num/den" or a bare integer.
  static Rational parse(std::string_view text);

  Integer num() const { return value_.get_num(); }
  Integer den() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }

  /// floor(x) and the fractional part x - floor(x).
  Integer floor() const;
  Rational frac() const;

  Rational reciprocal() const;

  std::string str() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& x) { return Rational(mpq_class(-x.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit Rational(mpq_class value) : value_(std::move(value)) {}

  mpq_class value_;
};

/// reduceRational: normalizes num/den; throws Errc::ZeroDenominator.
Rational reduce_rational(const Integer& num, const Integer& den);

/// b^{-k} as an exact rational.
Rational inverse_power(const Integer& base, std::uint64_t k);

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace vbs
