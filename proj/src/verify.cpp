#include "vbs/verify.hpp"

#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "vbs/alpha_engine.hpp"
#include "vbs/conversions.hpp"
#include "vbs/error.hpp"
#include "vbs/primes.hpp"

namespace vbs {

namespace {

constexpr std::uint64_t kSeed = 0x5eed1234abcdULL;

class Runner {
 public:
  Runner(VerifyReport& report, std::ostream& progress) : report_(report), progress_(progress) {}

  // Records the check; exceptions count as failures with their message.
  void check(const std::string& name, const std::function<bool(std::string&)>& body) {
    CheckResult r{name, false, {}};
    try {
      r.pass = body(r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    progress_ << (r.pass ? "  ok   " : "  FAIL ") << name << "\n";
    report_.checks.push_back(std::move(r));
  }

  std::ostream& progress() { return progress_; }

 private:
  VerifyReport& report_;
  std::ostream& progress_;
};

std::vector<Integer> bases_or(const VerifyOptions& o, std::vector<Integer> fallback) {
  if (o.base) return {*o.base};
  return fallback;
}

std::vector<std::string> reals_or(const VerifyOptions& o, std::vector<std::string> fallback) {
  if (o.real) return {*o.real};
  return fallback;
}

Rational random_fraction(std::mt19937_64& rng, std::uint64_t max_den) {
  std::uniform_int_distribution<std::uint64_t> den_dist(2, std::max<std::uint64_t>(2, max_den));
  const std::uint64_t den = den_dist(rng);
  std::uniform_int_distribution<std::uint64_t> num_dist(1, den - 1);
  return Rational(Integer(num_dist(rng)), Integer(den));
}

// (preperiod, cycle length) by long division; cycle length 0 for finite expansions.
std::pair<std::uint64_t, std::uint64_t> brute_shape(std::uint64_t c, std::uint64_t d, std::uint64_t b) {
  std::map<std::uint64_t, std::uint64_t> seen;
  std::uint64_t r = c;
  for (std::uint64_t pos = 1;; ++pos) {
    if (r == 0) return {pos - 1, 0};
    if (auto it = seen.find(r); it != seen.end()) return {it->second - 1, pos - it->second};
    seen.emplace(r, pos);
    r = r * b % d;
  }
}

Integer long_division_digit(const Rational& q, const Integer& b, std::uint64_t i) {
  Integer r = q.num();
  Integer digit;
  for (std::uint64_t k = 0; k < i; ++k) {
    r *= b;
    digit = r / q.den();
    r -= digit * q.den();
  }
  return digit;
}

void suite_expansions(const VerifyOptions& o, Runner& run) {
  const std::uint64_t max_den = o.max.value_or(200);
  for (const Integer& b : bases_or(o, {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12})) {
    run.check("shape d<=" + std::to_string(max_den) + " base " + b.get_str(), [&](std::string& detail) {
      const std::uint64_t bu = b.get_ui();
      std::uint64_t cases = 0;
      for (std::uint64_t d = 2; d <= max_den; ++d) {
        for (std::uint64_t c = 1; c < d; ++c) {
          if (std::gcd(c, d) != 1) continue;
          const ExpansionShape s = expansion_shape(Rational(Integer(c), Integer(d)), b);
          const auto [pre, cycle] = brute_shape(c, d, bu);
          const bool periodic = s.kind == ExpansionKind::Periodic;
          if (s.preperiod != pre || periodic != (cycle != 0) || (periodic && s.period != cycle) ||
              (periodic && s.period != multiplicative_order(b, s.d1))) {
            detail = std::to_string(c) + "/" + std::to_string(d);
            return false;
          }
          ++cases;
        }
      }
      detail = std::to_string(cases) + " fractions";
      return true;
    });
  }
  const std::uint64_t samples = o.count.value_or(500);
  const std::uint64_t horizon = o.horizon.value_or(10'000);
  run.check("digitAt vs long division, " + std::to_string(samples) + " samples", [&](std::string& detail) {
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<std::uint64_t> base_dist(2, 36);
    std::uniform_int_distribution<std::uint64_t> pos_dist(1, horizon);
    for (std::uint64_t k = 0; k < samples; ++k) {
      const Rational q = random_fraction(rng, 1'000'000);
      const Integer b = o.base ? *o.base : Integer(base_dist(rng));
      const std::uint64_t i = pos_dist(rng);
      if (digit_at(q, b, i) != long_division_digit(q, b, i)) {
        detail = q.str() + " base " + b.get_str() + " position " + std::to_string(i);
        return false;
      }
    }
    return true;
  });
}

void suite_sumapprox(const VerifyOptions& o, Runner& run) {
  const std::uint64_t n = o.terms.value_or(50);
  for (const std::string& spec : reals_or(o, {"sqrt:2", "alpha:T1"})) {
    const BracketingOracle beta = BracketingOracle::from_spec(RealSpec::parse(spec));
    for (const Integer& b : bases_or(o, {2, 3, 10, 16})) {
      const std::string tag = spec + " base " + b.get_str() + " N=" + std::to_string(n);
      const ApproxSequence below = sum_below(beta, b, n);
      const ApproxSequence above = sum_above(beta, b, n);
      run.check("term shape " + tag, [&](std::string&) {
        for (const auto* s : {&below, &above}) {
          std::uint64_t last = 0;
          for (const auto& t : s->terms) {
            if (t.digit < 1 || t.digit >= b || t.exponent <= last) return false;
            last = t.exponent;
          }
        }
        return below.terms.size() == n && above.terms.size() == n;
      });
      const Rational low = partial_value(below);
      const Rational high = Rational(1) - partial_value(above);
      const Rational gap_below = inverse_power(b, below.terms.back().exponent);
      const Rational gap_above = inverse_power(b, above.terms.back().exponent);
      run.check("sandwich from below " + tag, [&](std::string&) {
        return cut(beta, low) == CutSide::Below && cut(beta, low + gap_below) == CutSide::Above;
      });
      run.check("sandwich from above " + tag, [&](std::string&) {
        return cut(beta, high) == CutSide::Above && cut(beta, high - gap_above) == CutSide::Below;
      });
      run.check("completeness defect " + tag, [&](std::string& detail) {
        const Rational defect = high - low;
        detail = "defect " + defect.str();
        return defect.sign() > 0 && defect < gap_below + gap_above;
      });
      run.check("general sum equals n-th term " + tag, [&](std::string& detail) {
        for (std::uint64_t i = 1; i <= n; ++i) {
          if (general_sum(beta, b, i) != below.terms[i - 1].value()) {
            detail = "n=" + std::to_string(i);
            return false;
          }
        }
        return general_sum(beta, 1, 5).is_zero() && general_sum(beta, b, 0).is_zero();
      });
    }
  }
}

struct ScheduleRange {
  std::string id;
  std::uint64_t last;
};

std::vector<ScheduleRange> schedules_or(const VerifyOptions& o, std::vector<ScheduleRange> fallback,
                                        std::uint64_t given_last) {
  if (o.schedule) return {{*o.schedule, o.max.value_or(given_last)}};
  return fallback;
}

void suite_tail_bounds(const VerifyOptions& o, Runner& run) {
  for (const auto& [id, last] : schedules_or(o, {{"T1", 1}, {"T2", 0}}, 0)) {
    const auto alpha = std::make_shared<const AlphaNumber>(resolve_schedule(id));
    const BracketingOracle oracle = BracketingOracle::alpha(alpha);
    for (std::uint64_t n = 0; n <= last; ++n) {
      run.check(id + " tail bounds n=" + std::to_string(n),
                [&](std::string&) { return tail_bounds_check(*alpha, n); });
      run.check(id + " ordering chain j=" + std::to_string(n), [&](std::string&) {
        const Rational lo = alpha->partial(n);
        const Rational next = alpha->partial(n + 1);
        return lo < next && next < alpha->beta(n + 1) && cut(oracle, lo) == CutSide::Below &&
               cut(oracle, alpha->beta(n + 1)) == CutSide::Above;
      });
    }
  }
}

void suite_partial_expansions(const VerifyOptions& o, Runner& run) {
  const std::string id = o.schedule.value_or("T1");
  const auto alpha = std::make_shared<const AlphaNumber>(resolve_schedule(id));
  const std::uint64_t last = o.max.value_or(2);
  for (const Integer& b : bases_or(o, {2, 6, 30})) {
    for (std::uint64_t j = 0; j <= last; ++j) {
      run.check(id + " alpha_" + std::to_string(j) + " base " + b.get_str(), [&](std::string& detail) {
        bool divides = true;
        for (std::uint64_t i = 0; i <= j; ++i) divides = divides && (b % nth_prime(i) == 0);
        const PartialExpansionClass c = classify_partial_expansion(*alpha, j, b);
        if (!divides) {
          detail = "periodic";
          return c.kind == ExpansionKind::Periodic;
        }
        const Integer& h = alpha->schedule().value(j);
        detail = "finite length " + std::to_string(c.length);
        return c.kind == ExpansionKind::Finite && Integer(c.length) == h &&
               sgn(digit_at(alpha->partial(j), b, c.length)) != 0;
      });
    }
  }
}

void suite_zero_runs(const VerifyOptions& o, Runner& run) {
  const Integer b = o.base.value_or(2);
  const std::uint64_t horizon = o.horizon.value_or(10'000);
  struct Plan {
    std::string id;
    std::vector<std::uint64_t> zero_run;
    std::vector<std::uint64_t> agreement;
  };
  std::vector<Plan> plans;
  if (o.schedule) {
    const auto s = resolve_schedule(*o.schedule);
    Plan p{*o.schedule, {}, {}};
    const std::uint64_t last = std::min<std::uint64_t>(o.max.value_or(2), s->size() - 2);
    for (std::uint64_t j = 0; j <= last; ++j) {
      if (nth_prime(j) > b) p.zero_run.push_back(j);
      if (nth_prime(j + 1) > b) p.agreement.push_back(j);
    }
    plans.push_back(p);
  } else {
    plans = {{"T1", {1, 2}, {0, 1, 2}}, {"T2", {1}, {1}}};
  }
  for (const auto& plan : plans) {
    const auto alpha = std::make_shared<const AlphaNumber>(resolve_schedule(plan.id));
    for (const std::uint64_t j : plan.zero_run) {
      run.check(plan.id + " max zero run j=" + std::to_string(j),
                [&](std::string&) { return max_zero_run_check(*alpha, j, b, horizon); });
    }
    for (const std::uint64_t j : plan.agreement) {
      run.check(plan.id + " digit agreement j=" + std::to_string(j),
                [&](std::string&) { return digit_agreement_check(*alpha, j, b, horizon); });
    }
  }
}

void suite_fast_path(const VerifyOptions& o, Runner& run) {
  struct Case {
    std::string id;
    Integer base;
    std::uint64_t n;
    std::optional<FastBranch> expect;
  };
  std::vector<Case> cases;
  if (o.schedule) {
    const std::uint64_t from = o.from.value_or(1);
    for (std::uint64_t n = from; n < from + o.count.value_or(10); ++n) {
      cases.push_back({*o.schedule, o.base.value_or(2), n, std::nullopt});
    }
  } else {
    for (const std::uint64_t n : {729, 740, 774}) cases.push_back({"T2", 2, n, FastBranch::Step3A});
    for (const std::uint64_t n : {775, 800}) cases.push_back({"T2", 2, n, FastBranch::Step3B});
    for (std::uint64_t n = 1; n <= 10; ++n) cases.push_back({"T1", 2, n, FastBranch::Fallback});
  }
  std::map<std::string, std::shared_ptr<const AlphaNumber>> alphas;
  for (const auto& c : cases) {
    auto& alpha = alphas[c.id];
    if (!alpha) alpha = std::make_shared<const AlphaNumber>(resolve_schedule(c.id));
    run.check(c.id + " base " + c.base.get_str() + " n=" + std::to_string(c.n), [&](std::string& detail) {
      const FastTermResult r = fast_sum_below_term(*alpha, c.base, c.n);
      const SumTerm expected = sum_below(BracketingOracle::alpha(alpha), c.base, c.n).terms.back();
      detail = branch_name(r.trace.branch) + " " + r.term.str();
      for (const auto& [name, ok] : r.trace.guards) detail += "; " + name + (ok ? " holds" : " fails");
      const bool same = r.term.digit == expected.digit && r.term.exponent == expected.exponent;
      return same && (!c.expect || *c.expect == r.trace.branch);
    });
  }
}

void suite_recovery(const VerifyOptions& o, Runner& run) {
  const std::string id = o.schedule.value_or("T1");
  const auto alpha = std::make_shared<const AlphaNumber>(resolve_schedule(id));
  const std::uint64_t last = o.max.value_or(2);
  for (std::uint64_t n = 0; n <= last; ++n) {
    run.check(id + " recover h(" + std::to_string(n + 1) + ")", [&](std::string& detail) {
      const Integer y = recover_next_value(*alpha, n, alpha->schedule().value(n));
      detail = y.get_str();
      return y == alpha->schedule().value(n + 1);
    });
  }
}

void suite_trace_above(const VerifyOptions& o, Runner& run) {
  const std::string id = o.schedule.value_or("T1");
  const auto alpha = std::make_shared<const AlphaNumber>(resolve_schedule(id));
  const BracketingOracle oracle = BracketingOracle::alpha(alpha);
  const std::uint64_t samples = o.count.value_or(1000);
  const std::uint64_t max_den = o.max.value_or(10'000);
  std::mt19937_64 rng(kSeed);
  std::map<std::string, std::uint64_t> coverage;
  std::uint64_t bad = 0;
  std::string first_bad;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const Rational q = random_fraction(rng, max_den);
    try {
      const TraceAboveResult r = trace_above_detailed(*alpha, q);
      ++coverage[step_name(r.step)];
      const bool below = cut(oracle, q) == CutSide::Below;
      bool ok = r.value.is_zero() == below;
      if (ok && !below) ok = r.value < q && cut(oracle, r.value) == CutSide::Above;
      ok = ok && (dedekind_cut(*alpha, q) == (below ? 0 : 1));
      if (!ok && bad++ == 0) first_bad = q.str();
    } catch (const Error& e) {
      if (bad++ == 0) first_bad = q.str() + ": " + e.what();
    }
    if ((k + 1) % 100 == 0) run.progress() << "  thm6 " << (k + 1) << "/" << samples << "\n";
  }
  run.check(id + " trace from above on " + std::to_string(samples) + " fractions", [&](std::string& detail) {
    std::ostringstream os;
    for (const auto& [step, hits] : coverage) os << step << "=" << hits << " ";
    if (bad != 0) os << "first failure " << first_bad;
    detail = os.str();
    return bad == 0;
  });
}

void suite_conversions(const VerifyOptions& o, Runner& run) {
  const std::uint64_t n = o.terms.value_or(40);
  const std::uint64_t samples = o.count.value_or(200);
  for (const std::string& spec : reals_or(o, {"sqrt:2", "alpha:T1"})) {
    const BracketingOracle beta = BracketingOracle::from_spec(RealSpec::parse(spec));
    const TraceFn trace = gsum_trace_below(beta);
    const CutFn dcut = gsum_cut(beta);
    for (const Integer& b : bases_or(o, {2, 10})) {
      run.check("round trip " + spec + " base " + b.get_str() + " n<=" + std::to_string(n),
                [&](std::string& detail) {
                  for (std::uint64_t i = 1; i <= n; ++i) {
                    if (gsum_from_trace_and_cut(trace, dcut, b, i) != general_sum(beta, b, i)) {
                      detail = "n=" + std::to_string(i);
                      return false;
                    }
                  }
                  return true;
                });
    }
    std::mt19937_64 rng(kSeed);
    run.check("trace and cut from general sum, " + spec, [&](std::string& detail) {
      for (std::uint64_t k = 0; k < samples; ++k) {
        const Rational q = random_fraction(rng, 10'000);
        const bool below = cut(beta, q) == CutSide::Below;
        if (dcut(q) != (below ? 0 : 1)) {
          detail = "cut disagrees at " + q.str();
          return false;
        }
        if (below) {
          const Rational t = trace(q);
          if (!(q < t) || cut(beta, t) != CutSide::Below) {
            detail = "trace fails at " + q.str();
            return false;
          }
        }
      }
      return true;
    });
    const auto& kind = RealSpec::parse(spec).kind();
    if (const auto* a = std::get_if<AlphaSpec>(&kind)) {
      const auto alpha = std::make_shared<const AlphaNumber>(resolve_schedule(a->schedule));
      const TraceFn t_above = [alpha](const Rational& q) { return trace_above(*alpha, q); };
      const CutFn d = [alpha](const Rational& q) { return dedekind_cut(*alpha, q); };
      for (const Integer& b : bases_or(o, {2, 10})) {
        run.check("general sum from above via trace from above, " + spec + " base " + b.get_str(),
                  [&](std::string& detail) {
                    // Queries carry denominators b^k; T1's table covers k up to ~log_b 37762.
                    const std::uint64_t m = std::min<std::uint64_t>(n, b == 2 ? 10 : 4);
                    for (std::uint64_t i = 1; i <= m; ++i) {
                      if (gsum_above_from_trace_and_cut(t_above, d, b, i) != general_sum_above(beta, b, i)) {
                        detail = "n=" + std::to_string(i);
                        return false;
                      }
                    }
                    return true;
                  });
      }
    }
  }
}

void suite_bertrand(const VerifyOptions& o, Runner& run) {
  const std::uint64_t y_max = o.max.value_or(5000);
  run.check("P_y <= 2^(y+1) for y <= " + std::to_string(y_max),
            [&](std::string&) { return bertrand_check(y_max); });
  run.check("P_0...P_n <= 2^((n+1)^2) for n <= 200", [&](std::string& detail) {
    for (std::uint64_t n = 0; n <= std::min<std::uint64_t>(y_max, 200); ++n) {
      if (primorial_upto_index(n) > (Integer(1) << ((n + 1) * (n + 1)))) {
        detail = "n=" + std::to_string(n);
        return false;
      }
    }
    return true;
  });
}

using SuiteFn = void (*)(const VerifyOptions&, Runner&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"expansions", suite_expansions}, {"sumapprox", suite_sumapprox}, {"lemma2", suite_tail_bounds},
      {"lemma3", suite_partial_expansions},         {"lemma4", suite_zero_runs},       {"thm4", suite_fast_path},
      {"thm5", suite_recovery},             {"thm6", suite_trace_above},           {"thm8", suite_conversions},
      {"bertrand", suite_bertrand},
  };
  return table;
}

}  // namespace

std::size_t VerifyReport::passed() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.pass ? 1 : 0;
  return n;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

VerifyReport verify_suite(const std::string& name, const VerifyOptions& options, std::ostream& progress) {
  for (const auto& [suite, fn] : suites()) {
    if (suite != name) continue;
    VerifyReport report{name, {}};
    Runner run(report, progress);
    progress << "suite " << name << "\n";
    fn(options, run);
    return report;
  }
  throw Error(Errc::UnknownSuite, "unknown suite '" + name + "'");
}

}  // namespace vbs
