#include "vbs/expansion.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "vbs/error.hpp"
#include "vbs/primes.hpp"

namespace vbs {

namespace {

void require_unit_interval(const Rational& q) {
  if (q.sign() < 0 || q >= Rational(1)) {
    throw Error(Errc::OutOfRange, q.str() + " is not in [0,1)");
  }
}

Integer powm(const Integer& base, const Integer& exp, const Integer& mod) {
  Integer out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

// Order of b modulo a prime p (b not divisible by p).
Integer order_mod_prime(const Integer& b, const Integer& p) {
  Integer order = p - 1;
  for (const auto& [r, mult] : factorize(p - 1)) {
    (void)mult;
    while (order % r == 0 && powm(b, order / r, p) == 1) order /= r;
  }
  return order;
}

// Order of b modulo p^k by lifting the order modulo p (or 4 when p == 2).
Integer order_mod_prime_power(const Integer& b, const Integer& p, std::uint64_t k) {
  if (p == 2) {
    if (k == 1) return 1;
    const Integer base_order = (b % 4 == 1) ? 1 : 2;
    if (k == 2) return base_order;
    const Integer modulus = Integer(1) << k;
    Integer x = powm(b, base_order, modulus) - 1;
    if (sgn(x) < 0) x += modulus;
    if (sgn(x) == 0) return base_order;
    const std::uint64_t v = mpz_scan1(x.get_mpz_t(), 0);
    return v >= k ? base_order : base_order * (Integer(1) << (k - v));
  }
  const Integer base_order = order_mod_prime(b, p);
  if (k == 1) return base_order;
  const Integer modulus = ipow(p, k);
  Integer x = powm(b, base_order, modulus) - 1;
  if (sgn(x) < 0) x += modulus;
  if (sgn(x) == 0) return base_order;
  const std::uint64_t v = mpz_remove(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  return v >= k ? base_order : base_order * ipow(p, k - v);
}

std::optional<std::uint64_t> cap_as_u64(const PowerValue& cap) {
  const auto value = materialize(cap, 64);
  if (!value) return std::nullopt;
  if (sgn(*value) <= 0) return 0;
  if (!value->fits_ulong_p()) return std::nullopt;
  return value->get_ui();
}

}  // namespace

void require_base(const Integer& b) {
  if (b < 2) throw Error(Errc::BadBase, "base must be >= 2, got " + b.get_str());
}

std::string DigitWindow::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0) os << ",";
    os << digits[i].get_str();
  }
  return os.str();
}

Integer digit_at(const Rational& q, const Integer& b, std::uint64_t i) {
  require_base(b);
  require_unit_interval(q);
  if (i == 0) throw Error(Errc::OutOfRange, "digit positions start at 1");
  const Integer d = q.den();
  const Integer r = (q.num() * powm(b, Integer(i - 1), d)) % d;
  return (b * r) / d;
}

Integer multiplicative_order(const Integer& b, const Integer& d1) {
  if (d1 < 1) throw Error(Errc::OutOfRange, "modulus must be positive");
  if (d1 == 1) return 1;
  if (gcd(b, d1) != 1) {
    throw Error(Errc::NotCoprime, b.get_str() + " and " + d1.get_str() + " share a factor");
  }
  Integer order = 1;
  for (const auto& [p, k] : factorize(d1)) order = lcm(order, order_mod_prime_power(b, p, k));
  return order;
}

ExpansionShape expansion_shape(const Rational& q, const Integer& b) {
  require_base(b);
  if (q.sign() <= 0 || q >= Rational(1)) throw Error(Errc::OutOfRange, q.str() + " is not in (0,1)");
  ExpansionShape shape;
  shape.base = b;
  Integer d1 = q.den();
  std::uint64_t s = 0;
  for (const auto& [p, v] : factorize(b)) {
    const std::uint64_t e = mpz_remove(d1.get_mpz_t(), d1.get_mpz_t(), p.get_mpz_t());
    s = std::max(s, (e + v - 1) / v);
  }
  shape.d1 = d1;
  shape.d2 = q.den() / d1;
  shape.preperiod = s;
  if (d1 == 1) {
    shape.kind = ExpansionKind::Finite;
    shape.finite_length = s;
  } else {
    shape.kind = ExpansionKind::Periodic;
    shape.period = multiplicative_order(b, d1);
  }
  return shape;
}

DigitStream::DigitStream(const Rational& q, const Integer& b, std::uint64_t start)
    : base_(b), den_(q.den()), position_(start) {
  require_base(b);
  require_unit_interval(q);
  if (start == 0) throw Error(Errc::OutOfRange, "digit positions start at 1");
  remainder_ = (q.num() * powm(b, Integer(start - 1), den_)) % den_;
  small_base_ = b.fits_ulong_p();
  if (small_base_) base_ui_ = b.get_ui();
}

Integer DigitStream::next() {
  ++position_;
  if (small_base_) {
    mpz_mul_ui(remainder_.get_mpz_t(), remainder_.get_mpz_t(), base_ui_);
  } else {
    remainder_ *= base_;
  }
  if (remainder_ < den_) return 0;
  Integer digit;
  mpz_tdiv_qr(digit.get_mpz_t(), remainder_.get_mpz_t(), remainder_.get_mpz_t(), den_.get_mpz_t());
  return digit;
}

DigitWindow expand_window(const Rational& q, const Integer& b, std::uint64_t start, std::uint64_t count) {
  DigitStream stream(q, b, start);
  DigitWindow window{b, start, {}};
  window.digits.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) window.digits.push_back(stream.next());
  return window;
}

DigitWindow expand_prefix(const Rational& q, const Integer& b, std::uint64_t n) {
  return expand_window(q, b, 1, n);
}

std::optional<NonzeroDigit> nth_nonzero_digit(const Rational& q, const Integer& b, std::uint64_t n,
                                              const PowerValue& cap) {
  require_base(b);
  if (n == 0) throw Error(Errc::OutOfRange, "n counts from 1");
  const auto limit = cap_as_u64(cap);  // nullopt: beyond 2^64, never reached by a scan
  const auto within = [&](std::uint64_t pos) { return !limit || pos <= *limit; };
  if (q.is_zero()) return std::nullopt;

  constexpr std::uint64_t kMaxJumpPeriod = std::uint64_t{1} << 22;
  if (bit_length(q.den()) <= 62 && b.fits_ulong_p()) {
    const ExpansionShape shape = expansion_shape(q, b);
    DigitStream stream(q, b);
    std::uint64_t seen = 0;
    const std::uint64_t head = shape.preperiod;
    for (std::uint64_t pos = 1; pos <= head; ++pos) {
      Integer d = stream.next();
      if (!within(pos)) return std::nullopt;
      if (sgn(d) != 0 && ++seen == n) return NonzeroDigit{pos, d};
    }
    if (shape.kind == ExpansionKind::Finite) return std::nullopt;
    if (shape.period <= kMaxJumpPeriod) {
      const std::uint64_t period = shape.period.get_ui();
      std::vector<NonzeroDigit> hits;
      for (std::uint64_t k = 1; k <= period; ++k) {
        Integer d = stream.next();
        if (sgn(d) != 0) hits.push_back({k, d});
      }
      const std::uint64_t remaining = n - seen;
      const Integer full = Integer(remaining - 1) / Integer(hits.size());
      const std::uint64_t idx = (remaining - 1) % hits.size();
      const Integer pos = Integer(head) + full * Integer(period) + Integer(hits[idx].position);
      if (!pos.fits_ulong_p() || !within(pos.get_ui())) return std::nullopt;
      return NonzeroDigit{pos.get_ui(), hits[idx].digit};
    }
  }

  DigitStream stream(q, b);
  std::uint64_t seen = 0;
  while (!stream.exhausted()) {
    const std::uint64_t pos = stream.position();
    if (!within(pos)) return std::nullopt;
    Integer d = stream.next();
    if (sgn(d) != 0 && ++seen == n) return NonzeroDigit{pos, d};
  }
  return std::nullopt;
}

}  // namespace vbs
