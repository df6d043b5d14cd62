#include "vbs/alpha_engine.hpp"

#include <algorithm>

#include "vbs/error.hpp"
#include "vbs/oracle.hpp"
#include "vbs/primes.hpp"

namespace vbs {

namespace {

// Non-owning handle so oracle code can borrow a caller-owned AlphaNumber.
std::shared_ptr<const AlphaNumber> borrow(const AlphaNumber& a) {
  return std::shared_ptr<const AlphaNumber>(std::shared_ptr<const void>(), &a);
}

BracketingOracle oracle_of(const AlphaNumber& a) { return BracketingOracle::alpha(borrow(a)); }

Integer prime(std::uint64_t i) { return Integer(nth_prime(i)); }

// Bounded graph search for y < bound with y = h(x).  Entries too large to
// materialize lie far beyond any bound that arises here.
std::optional<Integer> search_value(const Schedule& s, std::uint64_t x, const Rational& bound) {
  if (!s.defined(x)) {
    throw Error(Errc::ScheduleExhausted, "h(" + std::to_string(x) + ") lies beyond schedule " + s.id());
  }
  if (!s.materialized(x)) return std::nullopt;
  const Integer& y = s.value(x);
  if (y * bound.den() < bound.num()) return y;
  return std::nullopt;
}

// p^y <= bound (or < bound when strict) for a positive rational bound.
bool power_below(const Integer& p, const Integer& y, const Rational& bound, bool strict) {
  const std::uint64_t floor_log = bit_length(p) - 1;
  if (y * Integer(floor_log) >= Integer(bit_length(bound.num()))) return false;
  const Integer lhs = ipow(p, y.get_ui()) * bound.den();
  return strict ? lhs < bound.num() : lhs <= bound.num();
}

Rational step_bound(const Integer& p, const Rational& gap) { return Rational(p) / gap; }

}  // namespace

PartialExpansionClass classify_partial_expansion(const AlphaNumber& a, std::uint64_t j, const Integer& b) {
  require_base(b);
  const ExpansionShape shape = expansion_shape(a.partial(j), b);
  return {shape.kind, shape.kind == ExpansionKind::Finite ? shape.finite_length : 0};
}

bool max_zero_run_check(const AlphaNumber& a, std::uint64_t j, const Integer& b, std::uint64_t horizon) {
  require_base(b);
  if (prime(j) <= b) {
    throw Error(Errc::PremiseViolated, "zero-run bound needs P_" + std::to_string(j) + " > " + b.get_str());
  }
  const PowerSum bound(a.big_m(j));
  if (compare(bound, PowerSum(Integer(horizon))) == std::strong_ordering::greater) return true;
  const std::uint64_t limit = bound.materialize()->get_ui();
  DigitStream stream(a.partial(j), b);
  std::uint64_t run = 0;
  while (stream.position() <= horizon) {
    if (stream.exhausted()) {
      run += horizon - stream.position() + 1;
      return run < limit;
    }
    run = sgn(stream.next()) == 0 ? run + 1 : 0;
    if (run >= limit) return false;
  }
  return true;
}

bool digit_agreement_check(const AlphaNumber& a, std::uint64_t j, const Integer& b, std::uint64_t cap) {
  require_base(b);
  if (prime(j + 1) <= b) {
    throw Error(Errc::PremiseViolated,
                "digit agreement needs P_" + std::to_string(j + 1) + " > " + b.get_str());
  }
  const PowerSum span = a.schedule().symbolic(j + 1) - PowerSum(a.big_m(j));
  if (sign(span) <= 0 || cap == 0) return true;
  std::uint64_t length = cap;
  if (compare(span, PowerSum(Integer(cap))) == std::strong_ordering::less) {
    length = span.materialize()->get_ui();
  }
  const DigitWindow lower = expand_prefix(a.partial(j), b, length);
  const DigitWindow upper = expand_prefix(a.partial(j + 1), b, length);
  if (lower.digits != upper.digits) return false;
  return real_prefix(oracle_of(a), b, length).digits == lower.digits;
}

std::string branch_name(FastBranch b) {
  switch (b) {
    case FastBranch::Fallback: return "Fallback";
    case FastBranch::Step3A: return "Step3A";
    case FastBranch::Step3B: return "Step3B";
  }
  return "?";
}

FastTermResult fast_sum_below_term(const AlphaNumber& a, const Integer& b, std::uint64_t n) {
  require_base(b);
  if (n == 0) throw Error(Errc::OutOfRange, "term index counts from 1");
  const Schedule& s = a.schedule();
  FastTermResult out;
  auto& trace = out.trace;

  std::uint64_t m = 0;
  while (prime(m) <= b) ++m;
  const PowerSum count{Integer(n)};
  if (compare(count, PowerSum(a.big_m(m))) == std::strong_ordering::less) {
    trace.resolved_j = m;
    trace.branch = FastBranch::Fallback;
    out.term = sum_below(oracle_of(a), b, n).terms.back();
    return out;
  }

  // Step 1: M(j) <= n < M(j+1).
  std::uint64_t j = m;
  while (compare(count, PowerSum(a.big_m(j + 1))) != std::strong_ordering::less) ++j;
  trace.resolved_j = j;

  // Step 2: n^2 + 1 < h(j+1) - M(j).
  const Integer window = Integer(n) * n + 1;
  const bool short_window =
      compare(PowerSum(window) + PowerSum(a.big_m(j)), s.symbolic(j + 1)) == std::strong_ordering::less;
  trace.guards.emplace_back("n^2+1 < h(j+1)-M(j)", short_window);

  std::optional<NonzeroDigit> digit;
  if (short_window) {
    trace.branch = FastBranch::Step3A;
    const bool premise = prime(j) > b;
    trace.guards.emplace_back("P_j > b", premise);
    if (!premise) throw Error(Errc::GuardFailed, "P_j > b fails at j=" + std::to_string(j));
    digit = nth_nonzero_digit(a.partial(j), b, n, PowerValue::constant(window));
  } else {
    trace.branch = FastBranch::Step3B;
    bool square = false;
    try {
      square = check_square_inequality(s, j + 1);
    } catch (const Error& e) {
      if (e.code() != Errc::Undefined) throw;
      throw Error(Errc::ScheduleExhausted, e.what());
    }
    trace.guards.emplace_back("M(j+1)^2+M(j+1)+1 < h(j+2)", square);
    if (!square) throw Error(Errc::GuardFailed, "square inequality fails at j=" + std::to_string(j + 1));
    const PowerValue cap = PowerValue::power(prime(j + 1), Integer(j + 2) * s.value(j + 1), Integer(n));
    digit = nth_nonzero_digit(a.partial(j + 1), b, n, cap);
  }
  if (!digit) {
    throw Error(Errc::GuardFailed, "fewer than " + std::to_string(n) + " nonzero digits inside the window");
  }
  out.term = SumTerm{b, digit->digit, digit->position};
  return out;
}

std::string step_name(TraceStep s) {
  switch (s) {
    case TraceStep::Step3Zero: return "Step3Zero";
    case TraceStep::Step3Beta: return "Step3Beta";
    case TraceStep::Step5Zero: return "Step5Zero";
    case TraceStep::Step5Certified: return "Step5Certified";
    case TraceStep::Step6ABeta: return "Step6ABeta";
    case TraceStep::Step6AShift: return "Step6AShift";
    case TraceStep::Step6BBeta: return "Step6BBeta";
    case TraceStep::Step6BShift: return "Step6BShift";
  }
  return "?";
}

TraceAboveResult trace_above_detailed(const AlphaNumber& a, const Rational& q) {
  const Schedule& s = a.schedule();
  TraceAboveResult out;
  if (q.sign() <= 0) {
    out.value = Rational(0);
    out.padded_den = q.den();
    return out;
  }
  // Past the unit interval every answer for q = 1 is also valid.
  if (q > Rational(1)) return trace_above_detailed(a, Rational(1));

  // Step 1: q = m/n with n >= h(0).
  out.padded_den = std::max(q.den(), s.value(0));
  const Integer& n = out.padded_den;

  // Step 2: h(j) <= n < h(j+1).
  std::uint64_t j = 0;
  while (compare(s.symbolic(j + 1), PowerSum(n)) != std::strong_ordering::greater) ++j;
  out.j = j;

  // Step 3.
  if (q <= a.partial(j)) {
    out.value = Rational(0);
    out.step = TraceStep::Step3Zero;
    return out;
  }
  for (std::uint64_t k = 0; k <= j; ++k) {
    if (a.beta(k) < q) {
      out.value = a.beta(k);
      out.step = TraceStep::Step3Beta;
      return out;
    }
  }

  const auto step6 = [&](std::uint64_t k, TraceStep beta_step, TraceStep shift_step) {
    const Rational gap = q - a.partial(k);
    if (n > Integer(sieve_prime_count())) throw Error(Errc::SieveLimit, "base P_0...P_n too large");
    const Integer b = primorial_upto_index(n.get_ui());
    std::uint64_t t = 0;
    Integer scale = 1;
    while (scale * gap.num() <= gap.den()) {
      scale *= b;
      ++t;
    }
    const Rational shifted = q - Rational(Integer(1), scale);
    const Rational bound = step_bound(prime(k + 1), shifted - a.partial(k));
    const auto u = search_value(s, k + 1, bound);
    if (u && power_below(prime(k + 1), *u, bound, true)) {
      out.value = a.beta(k + 1);
      out.step = beta_step;
    } else {
      out.value = shifted;
      out.step = shift_step;
    }
    return out;
  };

  // Step 4: is q <= beta_{j+1}?
  const Rational bound4 = step_bound(prime(j + 1), q - a.partial(j));
  const auto y = search_value(s, j + 1, bound4);
  if (!y || !power_below(prime(j + 1), *y, bound4, false)) {
    return step6(j, TraceStep::Step6BBeta, TraceStep::Step6BShift);
  }

  // Step 5.
  const Rational next = a.partial(j + 1);
  if (q <= next) {
    out.value = Rational(0);
    out.step = TraceStep::Step5Zero;
    return out;
  }
  const Rational bound5 = step_bound(prime(j + 2), q - next);
  const auto z = search_value(s, j + 2, bound5);
  if (z && power_below(prime(j + 2), *z, bound5, false)) {
    // The digit-coincidence argument needs b^{h(j+1)+1} < P_{j+2}^{h(j+2)-1}.
    const Integer b = primorial_upto_index(n.get_ui());
    const auto lhs = PowerSum::power(b, *y + 1);
    const auto rhs = PowerSum::power(prime(j + 2), *z - 1);
    if (compare(lhs, rhs) != std::strong_ordering::less) {
      throw Error(Errc::GuardFailed, "b^{h(j+1)+1} < P_{j+2}^{h(j+2)-1} fails at j=" + std::to_string(j));
    }
    out.value = Rational(0);
    out.step = TraceStep::Step5Certified;
    return out;
  }
  return step6(j + 1, TraceStep::Step6ABeta, TraceStep::Step6AShift);
}

Rational trace_above(const AlphaNumber& a, const Rational& q) { return trace_above_detailed(a, q).value; }

int dedekind_cut(const AlphaNumber& a, const Rational& q) { return trace_above(a, q).is_zero() ? 0 : 1; }

Integer recover_next_value(const AlphaNumber& a, std::uint64_t n, const Integer& hn) {
  const Schedule& s = a.schedule();
  if (!s.defined(n + 1)) {
    throw Error(Errc::ScheduleExhausted, "graph of h is unknown at " + std::to_string(n + 1));
  }
  if (sgn(hn) < 0) throw Error(Errc::OutOfRange, "h(n) must be nonnegative");
  const Integer b = primorial_upto_index(n);
  const Rational g = general_sum(oracle_of(a), b, hn.get_ui() + 1);
  if (g.is_zero()) throw Error(Errc::SearchFailed, "general sum vanished");
  const Rational bound = g.reciprocal() + Rational(1);
  for (Integer y = 0; Rational(y) < bound; ++y) {
    if (graph_contains(s, n + 1, y)) return y;
  }
  throw Error(Errc::SearchFailed, "no y below " + bound.str() + " with h(" + std::to_string(n + 1) + ") = y");
}

bool tail_bounds_check(const AlphaNumber& a, std::uint64_t n) {
  const BracketingOracle o = oracle_of(a);
  const Rational lower = a.partial(n) + Rational(Integer(1), a.prime_power(n + 1));
  return cut(o, lower) == CutSide::Below && cut(o, a.beta(n + 1)) == CutSide::Above;
}

}  // namespace vbs
