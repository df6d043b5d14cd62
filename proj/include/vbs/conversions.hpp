// Passing between the general sum approximation of an irrational and the
// pair (trace function, Dedekind cut).

#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "vbs/oracle.hpp"
#include "vbs/sum_approx.hpp"

namespace vbs {

/// q -> r with q < r < value whenever q < value.
using TraceFn = std::function<Rational(const Rational&)>;
/// q -> 0 iff q < value, else 1.
using CutFn = std::function<int(const Rational&)>;
/// (b, n) -> G(b, n).
using GeneralSumFn = std::function<Rational(const Integer&, std::uint64_t)>;

/// G(n,1) + G(n,2) with n the reduced denominator of q (2 when q is an integer).
Rational trace_below_from_gsum(const GeneralSumFn& g, const Rational& q);
/// 0 iff q <= G(n,1), same n.
int cut_from_gsum(const GeneralSumFn& g, const Rational& q);

/// Next term after the partial sum s: locate the first nonzero digit of
/// t(s) - s at position k, then probe the cut over positions l <= k (l
/// ascending) and digits b-1 down to 1.  Throws Errc::InconsistentOracles
/// when no certified digit turns up within `step_cap` probes.
SumTerm next_term_from_trace_and_cut(const TraceFn& t, const CutFn& d, const Integer& b,
                                     const Rational& s, std::uint64_t step_cap);

/// G(b, n) rebuilt from a trace from below and a cut; 0 when b < 2 or n = 0.
Rational gsum_from_trace_and_cut(const TraceFn& t, const CutFn& d, const Integer& b, std::uint64_t n,
                                 std::uint64_t step_cap = 1'000'000);

/// Mirrors through 1 - value: trace from above and cut from the general sum
/// from above, and the general sum from above from a trace from above.
Rational trace_above_from_gsum_above(const GeneralSumFn& g_above, const Rational& q);
int cut_from_gsum_above(const GeneralSumFn& g_above, const Rational& q);
Rational gsum_above_from_trace_and_cut(const TraceFn& t_above, const CutFn& d, const Integer& b,
                                       std::uint64_t n, std::uint64_t step_cap = 1'000'000);

/// Sources read directly off an oracle.  The native traces throw
/// Errc::OutOfRange when q lies on the wrong side of the value.
TraceFn native_trace_below(const BracketingOracle& o);
TraceFn native_trace_above(const BracketingOracle& o);
CutFn native_cut(const BracketingOracle& o);
GeneralSumFn gsum_source(const BracketingOracle& o);
GeneralSumFn gsum_above_source(const BracketingOracle& o);

/// Sources derived from the general sum of an oracle.
TraceFn gsum_trace_below(const BracketingOracle& o);
CutFn gsum_cut(const BracketingOracle& o);

}  // namespace vbs
