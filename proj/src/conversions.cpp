#include "vbs/conversions.hpp"

#include "vbs/error.hpp"

namespace vbs {

namespace {

// Position and digit of the first nonzero base-b digit of 0 < x < 1.
std::pair<std::uint64_t, Integer> leading_digit(const Rational& x, const Integer& b) {
  // Start just below the estimate log_b(den/num) and walk forward.
  const std::uint64_t gap = bit_length(x.den()) - std::min(bit_length(x.den()), bit_length(x.num()));
  std::uint64_t k = gap / bit_length(b);
  if (k > 0) --k;
  Integer scaled = x.num() * ipow(b, k);
  while (scaled < x.den()) {
    scaled *= b;
    ++k;
  }
  return {k, Integer(scaled / x.den())};
}

}  // namespace

namespace {

// Denominator n with q*n integral; 0 = 0/2 keeps the base >= 2.
Integer query_base(const Rational& q) { return q.den() < 2 ? Integer(2) : q.den(); }

}  // namespace

Rational trace_below_from_gsum(const GeneralSumFn& g, const Rational& q) {
  const Integer n = query_base(q);
  return g(n, 1) + g(n, 2);
}

int cut_from_gsum(const GeneralSumFn& g, const Rational& q) { return q <= g(query_base(q), 1) ? 0 : 1; }

SumTerm next_term_from_trace_and_cut(const TraceFn& t, const CutFn& d, const Integer& b,
                                     const Rational& s, std::uint64_t step_cap) {
  // Step 1: t(s) = s + D b^{-k} + eps.
  // s was certified below by the cut, so a trace refusing it contradicts the cut.
  Rational ahead;
  try {
    ahead = t(s);
  } catch (const Error& e) {
    if (e.code() != Errc::OutOfRange) throw;
    throw Error(Errc::InconsistentOracles, "trace rejects " + s.str() + ": " + e.what());
  }
  if (ahead <= s) throw Error(Errc::InconsistentOracles, "trace did not move past " + s.str());
  const std::uint64_t k = leading_digit(ahead - s, b).first;

  // Step 2: s + D' b^{-l} < value < s + (D'+1) b^{-l}.
  std::uint64_t probes = 0;
  const auto below = [&](const Rational& p) {
    if (p >= Rational(1)) return false;
    if (++probes > step_cap) {
      throw Error(Errc::InconsistentOracles, "digit search exceeded " + std::to_string(step_cap) + " probes");
    }
    return d(p) == 0;
  };
  for (std::uint64_t l = 1; l <= k; ++l) {
    const Rational unit = inverse_power(b, l);
    for (Integer digit = b - 1; digit >= 1; --digit) {
      if (!below(s + Rational(digit) * unit)) continue;
      if (below(s + Rational(Integer(digit + 1)) * unit)) break;
      return SumTerm{b, digit, l};
    }
  }
  throw Error(Errc::InconsistentOracles, "no certified digit up to position " + std::to_string(k));
}

Rational gsum_from_trace_and_cut(const TraceFn& t, const CutFn& d, const Integer& b, std::uint64_t n,
                                 std::uint64_t step_cap) {
  if (b < 2 || n == 0) return Rational(0);
  Rational partial(0);
  SumTerm term;
  for (std::uint64_t i = 1; i <= n; ++i) {
    term = next_term_from_trace_and_cut(t, d, b, partial, step_cap);
    partial = partial + term.value();
  }
  return term.value();
}

Rational trace_above_from_gsum_above(const GeneralSumFn& g_above, const Rational& q) {
  return Rational(1) - trace_below_from_gsum(g_above, Rational(1) - q);
}

int cut_from_gsum_above(const GeneralSumFn& g_above, const Rational& q) {
  return 1 - cut_from_gsum(g_above, Rational(1) - q);
}

Rational gsum_above_from_trace_and_cut(const TraceFn& t_above, const CutFn& d, const Integer& b,
                                       std::uint64_t n, std::uint64_t step_cap) {
  const TraceFn mirrored_trace = [t_above](const Rational& q) { return Rational(1) - t_above(Rational(1) - q); };
  const CutFn mirrored_cut = [d](const Rational& q) { return 1 - d(Rational(1) - q); };
  return gsum_from_trace_and_cut(mirrored_trace, mirrored_cut, b, n, step_cap);
}

TraceFn native_trace_below(const BracketingOracle& o) {
  return [o](const Rational& q) {
    for (std::uint64_t n = 16;; n *= 2) {
      const Bracket br = o.refine(n);
      if (br.lower > q) return br.lower;
      if (br.upper <= q) throw Error(Errc::OutOfRange, q.str() + " is not below " + o.describe());
    }
  };
}

TraceFn native_trace_above(const BracketingOracle& o) {
  return [o](const Rational& q) {
    for (std::uint64_t n = 16;; n *= 2) {
      const Bracket br = o.refine(n);
      if (br.upper < q) return br.upper;
      if (br.lower >= q) throw Error(Errc::OutOfRange, q.str() + " is not above " + o.describe());
    }
  };
}

CutFn native_cut(const BracketingOracle& o) {
  return [o](const Rational& q) { return cut(o, q) == CutSide::Below ? 0 : 1; };
}

GeneralSumFn gsum_source(const BracketingOracle& o) {
  return [o](const Integer& b, std::uint64_t n) { return general_sum(o, b, n); };
}

GeneralSumFn gsum_above_source(const BracketingOracle& o) {
  return [o](const Integer& b, std::uint64_t n) { return general_sum_above(o, b, n); };
}

TraceFn gsum_trace_below(const BracketingOracle& o) {
  return [g = gsum_source(o)](const Rational& q) { return trace_below_from_gsum(g, q); };
}

CutFn gsum_cut(const BracketingOracle& o) {
  return [g = gsum_source(o)](const Rational& q) { return cut_from_gsum(g, q); };
}

}  // namespace vbs
