#include "vbs/power_value.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <utility>
#include <vector>

#include "vbs/error.hpp"

namespace vbs {

namespace {

constexpr unsigned kLogScaleBits = 40;

std::uint64_t read_budget_from_env() {
  if (const char* env = std::getenv("VBS_BIT_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t{1} << 26;
}

// Upper bound on bits(c * p^e), or nullopt when it exceeds `limit` by a wide margin.
std::optional<std::uint64_t> term_bits_upper(const Integer& coeff, const Integer& base,
                                             const Integer& exponent, std::uint64_t limit) {
  if (sgn(exponent) == 0) return bit_length(coeff);
  if (!exponent.fits_ulong_p()) return std::nullopt;
  const std::uint64_t e = exponent.get_ui();
  const std::uint64_t pb = bit_length(base);
  if (e > limit / std::max<std::uint64_t>(pb - 1, 1) + 1) return std::nullopt;
  return bit_length(coeff) + e * pb;
}

// floor/ceil of log2|x| scaled by 2^kLogScaleBits.
std::pair<Integer, Integer> log2_scaled(const Integer& x) {
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());  // |mant| in [0.5, 1)
  const long double frac = log2l(std::fabs(static_cast<long double>(mant)));  // in [-1, 0)
  const long double scale = ldexpl(1.0L, kLogScaleBits);
  Integer base = Integer(exp2) << kLogScaleBits;
  // frac carries ~60 good bits; keep a generous margin.
  const long double slack = ldexpl(1.0L, -30) * scale;
  Integer lo = base + Integer(static_cast<long>(std::floor(frac * scale - slack)));
  Integer hi = base + Integer(static_cast<long>(std::ceil(frac * scale + slack)));
  return {lo, hi};
}

}  // namespace

std::uint64_t default_bit_budget() {
  static const std::uint64_t budget = read_budget_from_env();
  return budget;
}

PowerValue PowerValue::constant(const Integer& value) {
  return PowerValue{Integer(1), Integer(2), Integer(0), value - 1};
}

PowerValue PowerValue::power(const Integer& base, const Integer& exponent, const Integer& coeff,
                             const Integer& addend) {
  if (base < 2) throw Error(Errc::BadBase, "power base must be >= 2");
  if (sgn(exponent) < 0) throw Error(Errc::OutOfRange, "negative exponent");
  if (sgn(coeff) <= 0) throw Error(Errc::OutOfRange, "power coefficient must be positive");
  return PowerValue{coeff, base, exponent, addend};
}

std::string PowerValue::str() const {
  std::ostringstream os;
  if (sgn(exponent) == 0) {
    os << Integer(coeff + addend).get_str();
    return os.str();
  }
  if (coeff != 1) os << coeff.get_str() << "*";
  os << base.get_str() << "^" << exponent.get_str();
  if (sgn(addend) > 0) os << "+" << addend.get_str();
  if (sgn(addend) < 0) os << "-" << Integer(-addend).get_str();
  return os.str();
}

std::optional<Integer> materialize(const PowerValue& v, std::uint64_t bit_budget) {
  return PowerSum(v).materialize(bit_budget);
}

PowerSum::PowerSum(const Integer& constant) {
  if (sgn(constant) != 0) terms_.emplace(Integer(0), constant);
}

PowerSum::PowerSum(const PowerValue& v) {
  if (sgn(v.exponent) == 0) {
    const Integer c = v.coeff + v.addend;
    if (sgn(c) != 0) terms_.emplace(Integer(0), c);
    return;
  }
  base_ = v.base;
  terms_.emplace(v.exponent, v.coeff);
  if (sgn(v.addend) != 0) terms_[Integer(0)] += v.addend;
  normalize();
}

PowerSum PowerSum::power(const Integer& base, const Integer& exponent, const Integer& coeff) {
  return PowerSum(PowerValue::power(base, exponent, coeff));
}

void PowerSum::adopt_base(const std::optional<Integer>& other) {
  if (!other) return;
  if (!base_) {
    base_ = other;
  } else if (*base_ != *other) {
    throw Error(Errc::OutOfRange, "PowerSum terms must share one base");
  }
}

void PowerSum::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (sgn(it->second) == 0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  if (terms_.empty() || (terms_.size() == 1 && sgn(terms_.begin()->first) == 0)) base_.reset();
}

PowerSum& PowerSum::operator+=(const PowerSum& rhs) {
  adopt_base(rhs.base_);
  for (const auto& [e, c] : rhs.terms_) terms_[e] += c;
  normalize();
  return *this;
}

PowerSum& PowerSum::operator-=(const PowerSum& rhs) {
  adopt_base(rhs.base_);
  for (const auto& [e, c] : rhs.terms_) terms_[e] -= c;
  normalize();
  return *this;
}

PowerSum& PowerSum::operator*=(const PowerSum& rhs) {
  adopt_base(rhs.base_);
  std::map<Integer, Integer, std::greater<>> out;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : rhs.terms_) out[e1 + e2] += c1 * c2;
  }
  terms_ = std::move(out);
  normalize();
  return *this;
}

std::optional<Integer> PowerSum::materialize(std::uint64_t bit_budget) const {
  Integer total = 0;
  for (const auto& [e, c] : terms_) {
    if (sgn(e) == 0) {
      total += c;
      continue;
    }
    const auto bits = term_bits_upper(c, *base_, e, bit_budget);
    if (!bits || *bits > bit_budget + 64) return std::nullopt;
    total += c * ipow(*base_, e.get_ui());
  }
  if (bit_length(total) > bit_budget) return std::nullopt;
  return total;
}

Integer PowerSum::bit_estimate() const {
  Integer best = 0;
  for (const auto& [e, c] : terms_) {
    Integer bits = Integer(bit_length(c));
    if (sgn(e) != 0) bits += e * Integer(bit_length(*base_));
    if (bits > best) best = bits;
  }
  return best;
}

std::string PowerSum::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const PowerValue term = sgn(e) == 0 ? PowerValue::constant(abs(c))
                                        : PowerValue::power(*base_, e, abs(c));
    if (sgn(c) < 0) {
      os << "-";
    } else if (!first) {
      os << "+";
    }
    os << term.str();
    first = false;
  }
  return os.str();
}

int sign(const PowerSum& value) {
  // Walk from the leading term down.  With S = sum of |c_i| over the tail,
  // the tail is bounded by S * p^{e2}, so the lead decides the sign as soon
  // as |c1| * p^{e1-e2} > S.  Otherwise fold the lead into the next term.
  std::vector<std::pair<Integer, Integer>> terms(value.terms().begin(), value.terms().end());
  if (terms.empty()) return 0;
  std::size_t head = 0;
  while (terms.size() - head > 1) {
    const auto& [e1, c1] = terms[head];
    const Integer& e2 = terms[head + 1].first;
    Integer tail = 0;
    for (std::size_t i = head + 1; i < terms.size(); ++i) tail += abs(terms[i].second);
    const Integer gap = e1 - e2;
    if (gap > Integer(bit_length(tail))) return sgn(c1);
    const Integer lifted = c1 * ipow(*value.base(), gap.get_ui());
    if (abs(lifted) > tail) return sgn(c1);
    terms[head + 1].second += lifted;
    ++head;
    while (head < terms.size() && sgn(terms[head].second) == 0) ++head;
    if (head == terms.size()) return 0;
  }
  return sgn(terms[head].second);
}

namespace {

// log2 interval (scaled) of a positive sum dominated by its leading term.
std::optional<std::pair<Integer, Integer>> log2_interval(const PowerSum& v, std::uint64_t budget) {
  if (auto exact = v.materialize(budget)) {
    if (sgn(*exact) <= 0) return std::nullopt;
    const Integer bits = Integer(bit_length(*exact));
    return std::make_pair((bits - 1) << kLogScaleBits, bits << kLogScaleBits);
  }
  const auto& terms = v.terms();
  if (terms.empty() || v.is_constant()) return std::nullopt;
  const auto& [e1, c1] = *terms.begin();
  if (sgn(c1) <= 0) return std::nullopt;
  Integer tail = 0;
  auto it = std::next(terms.begin());
  for (; it != terms.end(); ++it) tail += abs(it->second);
  if (sgn(tail) != 0) {
    const Integer e2 = std::next(terms.begin())->first;
    // Require lead > 2 * tail bound so that v is within a factor 2 of the lead.
    if (e1 - e2 <= Integer(bit_length(tail) + 1 + bit_length(c1))) return std::nullopt;
  }
  const auto [clo, chi] = log2_scaled(c1);
  const auto [plo, phi] = log2_scaled(*v.base());
  const Integer one = Integer(1) << kLogScaleBits;
  return std::make_pair(clo + e1 * plo - one, chi + e1 * phi + one);
}

}  // namespace

std::strong_ordering compare(const PowerSum& lhs, const PowerSum& rhs, std::uint64_t bit_budget) {
  const bool same_base = !lhs.base() || !rhs.base() || *lhs.base() == *rhs.base();
  if (same_base) {
    const int s = sign(lhs - rhs);
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const auto a = lhs.materialize(bit_budget);
  const auto b = rhs.materialize(bit_budget);
  if (a && b) {
    const int c = cmp(*a, *b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const auto la = log2_interval(lhs, bit_budget);
  const auto lb = log2_interval(rhs, bit_budget);
  if (la && lb) {
    if (la->second < lb->first) return std::strong_ordering::less;
    if (lb->second < la->first) return std::strong_ordering::greater;
  }
  throw Error(Errc::GuardFailed, "cannot decide " + lhs.str() + " vs " + rhs.str() +
                                     " within the bit budget");
}

PowerSum times_power(const PowerSum& v, const Integer& base, const Integer& exponent) {
  return v * PowerSum::power(base, exponent);
}

}  // namespace vbs
