// Acceptance run: every criterion is checked against an independent reference
// at its stated size, and must finish inside its time limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "vbs/vbs.hpp"

using namespace vbs;

namespace {

// First 150 decimals of sqrt(2) - 1.
const char* kSqrt2Digits =
    "414213562373095048801688724209698078569671875376948073176679737990732478462107038850387534327641572735"
    "013846230912297024924836055850737212644121497099";

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;  // 0 means untimed
  std::function<Outcome()> body;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::shared_ptr<const AlphaNumber> alpha_of(const char* id) {
  return std::make_shared<const AlphaNumber>(builtin_schedule(id));
}

// Long division with a remainder table: preperiod, period (0 when finite).
std::pair<std::uint64_t, std::uint64_t> brute_shape(unsigned long c, unsigned long d, unsigned long b) {
  std::map<unsigned long, std::uint64_t> seen;
  unsigned long r = c % d;
  for (std::uint64_t k = 0;; ++k) {
    if (r == 0) return {k, 0};
    if (auto it = seen.find(r); it != seen.end()) return {it->second, k - it->second};
    seen.emplace(r, k);
    r = r * b % d;
  }
}

Outcome expansion_structure() {
  std::uint64_t cases = 0;
  for (unsigned long b = 2; b <= 12; ++b) {
    for (unsigned long d = 2; d <= 200; ++d) {
      for (unsigned long c = 1; c < d; ++c) {
        if (std::gcd(c, d) != 1) continue;
        const auto [pre, per] = brute_shape(c, d, b);
        const ExpansionShape s = expansion_shape(Rational(Integer(c), Integer(d)), Integer(b));
        const std::string tag = std::to_string(c) + "/" + std::to_string(d) + " base " + std::to_string(b);
        if (s.preperiod != pre) return fail("preperiod of " + tag);
        if (per == 0) {
          if (s.kind != ExpansionKind::Finite || s.finite_length != pre) return fail("finite shape of " + tag);
        } else {
          if (s.kind != ExpansionKind::Periodic || s.period != per) return fail("period of " + tag);
          if (multiplicative_order(Integer(b), s.d1) != per) return fail("order for " + tag);
        }
        ++cases;
      }
    }
  }
  return {true, std::to_string(cases) + " fractions"};
}

Outcome digit_access() {
  std::mt19937_64 rng(101);
  for (int k = 0; k < 500; ++k) {
    const Integer b = Integer(static_cast<unsigned long>(2 + rng() % 35));
    const Integer d = Integer(static_cast<unsigned long>(2 + rng() % 1'000'000));
    const Integer c = Integer(static_cast<unsigned long>(rng() % 1'000'000)) % d;
    const std::uint64_t i = 1 + rng() % 10'000;
    Integer r = c;
    Integer digit;
    for (std::uint64_t step = 0; step < i; ++step) {
      r *= b;
      digit = r / d;
      r %= d;
    }
    if (digit_at(Rational(c, d), b, i) != digit) {
      return fail(c.get_str() + "/" + d.get_str() + " base " + b.get_str() + " i=" + std::to_string(i));
    }
  }
  return {true, "500 samples"};
}

Outcome sum_approximation() {
  const ApproxSequence s = sum_below(BracketingOracle::sqrt(2), 10, 100);
  if (s.terms.size() != 100) return fail("term count " + std::to_string(s.terms.size()));
  std::size_t t = 0;
  for (std::size_t pos = 1; pos <= 150 && t < 100; ++pos) {
    const int digit = kSqrt2Digits[pos - 1] - '0';
    if (digit == 0) continue;
    const SumTerm& term = s.terms[t++];
    if (term.digit != digit || term.exponent != pos) return fail("term " + std::to_string(t));
  }
  if (t != 100) return fail("reference too short");
  const SumTerm& thirteenth = s.terms[12];
  if (thirteenth.digit != 9 || thirteenth.exponent != 14) return fail("term 13 is " + thirteenth.str());
  return {true, "term 13 = " + thirteenth.str()};
}

Outcome completeness_identity() {
  const std::vector<std::pair<std::string, BracketingOracle>> reals = {
      {"sqrt2-1", BracketingOracle::sqrt(2)}, {"alpha(T1)", BracketingOracle::alpha(alpha_of("T1"))}};
  for (const auto& [name, beta] : reals) {
    for (const int base : {2, 3, 10, 16}) {
      const Integer b(base);
      const ApproxSequence below = sum_below(beta, b, 50);
      const ApproxSequence above = sum_above(beta, b, 50);
      const Rational defect = Rational(1) - partial_value(below) - partial_value(above);
      const Rational bound = below.terms.back().value() / Rational(below.terms.back().digit) +
                             above.terms.back().value() / Rational(above.terms.back().digit);
      if (defect.sign() <= 0 || !(defect < bound)) return fail(name + " base " + std::to_string(base));
    }
  }
  return {true, "8 cases"};
}

Outcome round_trip() {
  for (const char* spec : {"sqrt:2", "alpha:T1"}) {
    const BracketingOracle beta = BracketingOracle::from_spec(RealSpec::parse(spec));
    const TraceFn trace = gsum_trace_below(beta);
    const CutFn dcut = gsum_cut(beta);
    for (const int base : {2, 10}) {
      for (std::uint64_t n = 1; n <= 40; ++n) {
        if (gsum_from_trace_and_cut(trace, dcut, base, n) != general_sum(beta, base, n)) {
          return fail(std::string(spec) + " base " + std::to_string(base) + " n=" + std::to_string(n));
        }
      }
    }
  }
  return {true, "160 values"};
}

Outcome trace_from_above() {
  const auto alpha = alpha_of("T1");
  const BracketingOracle oracle = BracketingOracle::alpha(alpha);
  std::mt19937_64 rng(202);
  std::uint64_t zero = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::uint64_t den = 2 + rng() % 9'999;
    const Rational q{Integer(static_cast<unsigned long>(1 + rng() % (den - 1))), Integer(den)};
    const Rational t = trace_above(*alpha, q);
    const bool below = cut(oracle, q) == CutSide::Below;
    if (t.is_zero() != below) return fail("zero test at " + q.str());
    if (below) {
      ++zero;
    } else if (!(t < q) || cut(oracle, t) != CutSide::Above) {
      return fail("bracket at " + q.str());
    }
  }
  return {true, std::to_string(zero) + " below, " + std::to_string(1000 - zero) + " above"};
}

Outcome recovery() {
  const auto alpha = alpha_of("T1");
  const std::vector<long> expected = {5, 22, 112};
  std::string got;
  for (std::uint64_t n = 0; n < expected.size(); ++n) {
    const Integer y = recover_next_value(*alpha, n, alpha->schedule().value(n));
    got += (n ? "," : "") + y.get_str();
    if (y != expected[n]) return fail("n=" + std::to_string(n) + " gave " + y.get_str());
  }
  return {true, got};
}

Outcome fast_path() {
  const auto alpha = alpha_of("T2");
  const BracketingOracle oracle = BracketingOracle::alpha(alpha);
  if (!check_square_inequality(alpha->schedule(), 2)) return fail("square inequality at j=2");
  const ApproxSequence reference = sum_below(oracle, 2, 800);
  const std::vector<std::pair<std::uint64_t, FastBranch>> cases = {
      {729, FastBranch::Step3A}, {740, FastBranch::Step3A}, {774, FastBranch::Step3A},
      {775, FastBranch::Step3B}, {800, FastBranch::Step3B}};
  for (const auto& [n, branch] : cases) {
    const FastTermResult r = fast_sum_below_term(*alpha, 2, n);
    const SumTerm& expected = reference.terms[n - 1];
    const std::string tag = "n=" + std::to_string(n);
    if (r.trace.branch != branch) return fail(tag + " took " + branch_name(r.trace.branch));
    if (r.term.digit != expected.digit || r.term.exponent != expected.exponent) return fail(tag + " term");
    // The first guard selects the branch; the rest are premises of that branch.
    for (std::size_t g = 1; g < r.trace.guards.size(); ++g) {
      if (!r.trace.guards[g].second) return fail(tag + " guard " + r.trace.guards[g].first);
    }
    if (branch == FastBranch::Step3B) {
      bool recorded = false;
      for (const auto& [guard, holds] : r.trace.guards) recorded = recorded || guard.find("M(j+1)^2") == 0;
      if (!recorded) return fail(tag + " square inequality not traced");
    }
  }
  return {true, "5 terms"};
}

Outcome zero_runs_and_agreement() {
  const std::uint64_t horizon = 10'000;
  const auto t1 = alpha_of("T1");
  const auto t2 = alpha_of("T2");
  for (const std::uint64_t j : {1, 2}) {
    if (!max_zero_run_check(*t1, j, 2, horizon)) return fail("T1 zero run j=" + std::to_string(j));
  }
  for (const std::uint64_t j : {0, 1, 2}) {
    if (!digit_agreement_check(*t1, j, 2, horizon)) return fail("T1 agreement j=" + std::to_string(j));
  }
  if (!max_zero_run_check(*t2, 1, 2, horizon)) return fail("T2 zero run j=1");
  if (!digit_agreement_check(*t2, 1, 2, horizon)) return fail("T2 agreement j=1");
  return {true, "7 checks"};
}

Outcome tail_bounds() {
  const auto t1 = alpha_of("T1");
  const auto t2 = alpha_of("T2");
  if (!tail_bounds_check(*t1, 0) || !tail_bounds_check(*t1, 1)) return fail("T1");
  if (!tail_bounds_check(*t2, 0)) return fail("T2");
  return {true, "3 checks"};
}

Outcome bertrand() {
  // Own sieve, so nth_prime is checked as well as the bound.
  std::vector<bool> composite(60'000, false);
  std::uint64_t index = 0;
  for (std::uint64_t p = 2; p < composite.size() && index <= 5000; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t m = p * p; m < composite.size(); m += p) composite[m] = true;
    if (nth_prime(index) != p) return fail("P_" + std::to_string(index));
    if (index < 63 && p > (std::uint64_t{1} << (index + 1))) return fail("bound at " + std::to_string(index));
    ++index;
  }
  if (index != 5001) return fail("sieve too small");
  if (!bertrand_check(5000)) return fail("bertrand_check");
  return {true, "y <= 5000"};
}

Outcome inequality_implication() {
  std::uint64_t growth_indices = 0;
  for (const char* id : {"T1", "T2", "T3"}) {
    const auto s = builtin_schedule(id);
    for (std::uint64_t n = 0; n + 1 < s->size(); ++n) {
      if (!check_growth_property(*s, n)) continue;
      ++growth_indices;
      if (!check_square_inequality(*s, n)) return fail(std::string(id) + " n=" + std::to_string(n));
    }
  }
  return {true, std::to_string(growth_indices) + " indices with growth"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "expansion structure vs long division, d <= 200, bases 2-12", 10, expansion_structure},
      {2, "digitAt vs long division, 500 samples", 5, digit_access},
      {3, "sum approximation of sqrt(2)-1, 100 terms", 5, sum_approximation},
      {4, "completeness identity, N = 50", 30, completeness_identity},
      {5, "general sum round trip, n <= 40", 60, round_trip},
      {6, "trace from above on T1, 1000 fractions", 60, trace_from_above},
      {7, "recovery of T1 values 5, 22, 112", 60, recovery},
      {8, "fast path on T2 base 2", 300, fast_path},
      {9, "zero runs and digit agreement, horizon 10^4", 30, zero_runs_and_agreement},
      {10, "tail bounds", 5, tail_bounds},
      {11, "prime bound P_y <= 2^(y+1), y <= 5000", 5, bertrand},
      {12, "growth property implies square inequality", 0, inequality_implication},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = o.ok;
    if (c.limit_s > 0 && took > c.limit_s) {
      ok = false;
      o.detail += " (over the time limit)";
    }
    if (!ok) ++failures;
    char timing[64];
    if (c.limit_s > 0) {
      std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", took, c.limit_s);
    } else {
      std::snprintf(timing, sizeof timing, "%.2fs", took);
    }
    std::printf("%s %2d  %s  [%s]  %s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), timing, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
