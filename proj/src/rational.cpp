#include "vbs/rational.hpp"

#include <ostream>

#include "vbs/error.hpp"

namespace vbs {

std::uint64_t bit_length(const Integer& x) {
  if (sgn(x) == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

Integer ipow(const Integer& x, std::uint64_t e) {
  Integer out;
  if (x.fits_ulong_p() && x >= 0) {
    mpz_ui_pow_ui(out.get_mpz_t(), x.get_ui(), e);
  } else {
    mpz_pow_ui(out.get_mpz_t(), x.get_mpz_t(), e);
  }
  return out;
}

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(Errc::ParseError, "empty integer");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw Error(Errc::ParseError, "bad integer '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw Error(Errc::ParseError, "bad integer '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw Error(Errc::ZeroDenominator, "denominator is zero");
  value_.get_num() = num;
  value_.get_den() = den;
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

Integer Rational::floor() const {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

Rational Rational::frac() const { return *this - Rational(floor()); }

Rational Rational::reciprocal() const {
  if (is_zero()) throw Error(Errc::ZeroDenominator, "reciprocal of zero");
  return Rational(den(), num());
}

std::string Rational::str() const { return num().get_str() + "/" + den().get_str(); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(Errc::ZeroDenominator, "division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational reduce_rational(const Integer& num, const Integer& den) { return Rational(num, den); }

Rational inverse_power(const Integer& base, std::uint64_t k) {
  return Rational(Integer(1), ipow(base, k));
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace vbs
