// Algorithms on alpha^h: expansion structure of the partial sums, the fast
// path for the sum approximation from below, the trace from above with its
// Dedekind cut, and recovery of h(n+1) from the general sum.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vbs/alpha_number.hpp"
#include "vbs/expansion.hpp"
#include "vbs/sum_approx.hpp"

namespace vbs {

struct PartialExpansionClass {
  ExpansionKind kind = ExpansionKind::Periodic;
  std::uint64_t length = 0;  // Finite only
};

/// Finite(h(j)) iff every P_i with i <= j divides b.
PartialExpansionClass classify_partial_expansion(const AlphaNumber& a, std::uint64_t j, const Integer& b);

/// True iff alpha_j shows no run of M(j) zeros among base-b positions
/// 1..horizon.  Throws Errc::PremiseViolated unless P_j > b.
bool max_zero_run_check(const AlphaNumber& a, std::uint64_t j, const Integer& b, std::uint64_t horizon);

/// True iff alpha_j, alpha_{j+1} and alpha agree on base-b positions
/// 1..min(h(j+1) - M(j), cap); vacuously true when that bound is <= 0.
/// Throws Errc::PremiseViolated unless P_{j+1} > b.
bool digit_agreement_check(const AlphaNumber& a, std::uint64_t j, const Integer& b, std::uint64_t cap);

enum class FastBranch { Fallback, Step3A, Step3B };

std::string branch_name(FastBranch b);

struct FastPathTrace {
  std::uint64_t resolved_j = 0;
  FastBranch branch = FastBranch::Fallback;
  std::vector<std::pair<std::string, bool>> guards;
};

struct FastTermResult {
  SumTerm term;
  FastPathTrace trace;
};

/// n-th term of the sum approximation from below of alpha in base b, using
/// the digit structure of the partial sums when n >= M(m) (m least with
/// P_m > b) and oracle extraction otherwise.  Throws Errc::GuardFailed when
/// a runtime inequality the chosen branch depends on does not hold.
FastTermResult fast_sum_below_term(const AlphaNumber& a, const Integer& b, std::uint64_t n);

enum class TraceStep { Step3Zero, Step3Beta, Step5Zero, Step5Certified, Step6ABeta, Step6AShift, Step6BBeta, Step6BShift };

std::string step_name(TraceStep s);

struct TraceAboveResult {
  Rational value;      // 0 when q < alpha, else alpha < value < q
  TraceStep step = TraceStep::Step3Zero;
  Integer padded_den;  // n with q = m/n, n >= h(0)
  std::uint64_t j = 0; // h(j) <= n < h(j+1)
};

/// Trace function from above.  Defined on all rationals: q <= 0 maps to 0
/// and q > 1 is answered as q = 1.
TraceAboveResult trace_above_detailed(const AlphaNumber& a, const Rational& q);
Rational trace_above(const AlphaNumber& a, const Rational& q);

/// 0 iff q < alpha.
int dedekind_cut(const AlphaNumber& a, const Rational& q);

/// h(n+1) from h(n) = hn, the general sum in base P_0...P_n and the graph of h.
Integer recover_next_value(const AlphaNumber& a, std::uint64_t n, const Integer& hn);

/// P_{n+1}^{-h(n+1)} < alpha - alpha_n <= P_{n+1}^{1-h(n+1)}, by oracle cuts.
bool tail_bounds_check(const AlphaNumber& a, std::uint64_t n);

}  // namespace vbs
