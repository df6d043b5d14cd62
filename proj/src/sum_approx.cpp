#include "vbs/sum_approx.hpp"

#include <sstream>

namespace vbs {

Rational SumTerm::value() const { return Rational(digit) * inverse_power(base, exponent); }

std::string SumTerm::str() const {
  return digit.get_str() + "*" + base.get_str() + "^-" + std::to_string(exponent);
}

std::string ApproxSequence::str() const {
  std::ostringstream os;
  for (const auto& t : terms) os << t.str() << "\n";
  os << "partial=" << partial_value(*this).str();
  return os.str();
}

ApproxSequence sum_below(const BracketingOracle& o, const Integer& b, std::uint64_t n) {
  require_base(b);
  ApproxSequence out{b, {}};
  if (n == 0) return out;
  // Widen the prefix until it holds n nonzero digits.
  for (std::uint64_t width = n + 8;; width *= 2) {
    const DigitWindow w = real_prefix(o, b, width);
    out.terms.clear();
    for (std::uint64_t i = 0; i < w.digits.size() && out.terms.size() < n; ++i) {
      if (sgn(w.digits[i]) != 0) out.terms.push_back(SumTerm{b, w.digits[i], i + 1});
    }
    if (out.terms.size() == n) return out;
  }
}

ApproxSequence sum_above(const BracketingOracle& o, const Integer& b, std::uint64_t n) {
  return sum_below(o.complement(), b, n);
}

Rational general_sum(const BracketingOracle& o, const Integer& b, std::uint64_t n) {
  if (b < 2 || n == 0) return Rational(0);
  return sum_below(o, b, n).terms.back().value();
}

Rational general_sum_above(const BracketingOracle& o, const Integer& b, std::uint64_t n) {
  if (b < 2 || n == 0) return Rational(0);
  return general_sum(o.complement(), b, n);
}

Rational partial_value(const ApproxSequence& s) {
  Rational total(0);
  for (const auto& t : s.terms) total = total + t.value();
  return total;
}

}  // namespace vbs
