#include "vbs/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "vbs/vbs.hpp"

namespace vbs {

namespace {

using json = nlohmann::ordered_json;

struct Outcome {
  std::string text;
  json result;
  json trace;
  int exit_code = 0;
};

// Raw flag values, validated into typed values before any computation.
struct Flags {
  std::string rat, base, real, schedule, q, terms, n, h, horizon, max, from, count, suite;
  bool json = false;
};

std::uint64_t to_count(const std::string& text, const char* flag) {
  const Integer v = parse_integer(text);
  if (sgn(v) < 0 || !v.fits_ulong_p()) {
    throw Error(Errc::OutOfRange, std::string(flag) + " must be a nonnegative machine-size integer");
  }
  return v.get_ui();
}

std::optional<std::uint64_t> opt_count(const std::string& text, const char* flag) {
  if (text.empty()) return std::nullopt;
  return to_count(text, flag);
}

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(Errc::ParseError, std::string("missing required flag ") + flag);
  return value;
}

Integer base_of(const Flags& f) {
  const Integer b = parse_integer(need(f.base, "--base"));
  require_base(b);
  return b;
}

json rational_json(const Rational& r) { return r.str(); }

json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

std::shared_ptr<const AlphaNumber> alpha_of(const Flags& f) {
  return std::make_shared<const AlphaNumber>(resolve_schedule(need(f.schedule, "--schedule")));
}

json term_json(const SumTerm& t) {
  return {{"digit", integer_json(t.digit)}, {"exponent", t.exponent}, {"value", t.value().str()}};
}

json sequence_json(const ApproxSequence& s) {
  json terms = json::array();
  for (const auto& t : s.terms) terms.push_back(term_json(t));
  return {{"base", integer_json(s.base)}, {"terms", terms}, {"partial", partial_value(s).str()}};
}

// "native:<spec>", "gsum:<spec>" or a bare spec (native).
struct SourceSpec {
  bool from_gsum = false;
  RealSpec spec;
};

SourceSpec parse_source(const std::string& text) {
  constexpr std::string_view kNative = "native:";
  constexpr std::string_view kGsum = "gsum:";
  const std::string_view view = text;
  if (view.substr(0, kNative.size()) == kNative) return {false, RealSpec::parse(view.substr(kNative.size()))};
  if (view.substr(0, kGsum.size()) == kGsum) return {true, RealSpec::parse(view.substr(kGsum.size()))};
  return {false, RealSpec::parse(view)};
}

Outcome cmd_analyze(const Flags& f) {
  const Rational q = Rational::parse(need(f.rat, "--rat"));
  const ExpansionShape s = expansion_shape(q, base_of(f));
  Outcome o;
  if (s.kind == ExpansionKind::Finite) {
    o.result = {{"kind", "finite"}, {"length", s.finite_length}};
  } else {
    o.result = {{"kind", "periodic"}, {"preperiod", s.preperiod}, {"period", integer_json(s.period)}};
  }
  o.trace = {{"d1", integer_json(s.d1)}, {"d2", integer_json(s.d2)}};
  o.text = o.result.dump();
  return o;
}

Outcome cmd_digits(const Flags& f) {
  const Integer b = base_of(f);
  const std::uint64_t from = opt_count(f.from, "--from").value_or(1);
  const std::uint64_t count = opt_count(f.count, "--count").value_or(20);
  if (from == 0) throw Error(Errc::OutOfRange, "--from counts from 1");
  DigitWindow w;
  if (!f.rat.empty() && !f.real.empty()) throw Error(Errc::ParseError, "give either --rat or --real");
  if (!f.rat.empty()) {
    w = expand_window(Rational::parse(f.rat), b, from, count);
  } else {
    const BracketingOracle o = BracketingOracle::from_spec(RealSpec::parse(need(f.real, "--real or --rat")));
    const DigitWindow prefix = real_prefix(o, b, from + count - 1);
    w = DigitWindow{b, from, std::vector<Integer>(prefix.digits.begin() + static_cast<long>(from - 1), prefix.digits.end())};
  }
  Outcome o;
  json digits = json::array();
  for (const auto& d : w.digits) digits.push_back(integer_json(d));
  o.result = {{"base", integer_json(b)}, {"from", from}, {"digits", digits}};
  o.text = w.str();
  return o;
}

Outcome cmd_sum(const Flags& f, bool above) {
  const BracketingOracle beta = BracketingOracle::from_spec(RealSpec::parse(need(f.real, "--real")));
  const Integer b = base_of(f);
  const std::uint64_t n = to_count(need(f.terms, "--terms"), "--terms");
  const ApproxSequence s = above ? sum_above(beta, b, n) : sum_below(beta, b, n);
  return {s.str(), sequence_json(s), nullptr, 0};
}

Outcome cmd_gsum(const Flags& f) {
  const BracketingOracle beta = BracketingOracle::from_spec(RealSpec::parse(need(f.real, "--real")));
  const Integer b = parse_integer(need(f.base, "--base"));
  if (sgn(b) < 0) throw Error(Errc::BadBase, "base must be nonnegative");
  const std::uint64_t n = to_count(need(f.n, "--n"), "--n");
  const Rational g = general_sum(beta, b, n);
  return {g.str(), rational_json(g), nullptr, 0};
}

Outcome cmd_alpha(const Flags& f, bool upper) {
  const auto alpha = alpha_of(f);
  const std::uint64_t n = to_count(need(f.n, "--n"), "--n");
  const Rational v = upper ? alpha->beta(n) : alpha->partial(n);
  return {v.str(), rational_json(v), nullptr, 0};
}

Outcome cmd_cut(const Flags& f) {
  const Rational q = Rational::parse(need(f.q, "--q"));
  int side = 0;
  if (!f.schedule.empty() && !f.real.empty()) throw Error(Errc::ParseError, "give either --schedule or --real");
  if (!f.schedule.empty()) {
    side = dedekind_cut(*alpha_of(f), q);
  } else {
    const BracketingOracle beta = BracketingOracle::from_spec(RealSpec::parse(need(f.real, "--real or --schedule")));
    side = cut(beta, q) == CutSide::Below ? 0 : 1;
  }
  return {std::to_string(side), side, nullptr, 0};
}

Outcome cmd_trace_above(const Flags& f) {
  const Rational q = Rational::parse(need(f.q, "--q"));
  const auto alpha = alpha_of(f);
  const TraceAboveResult r = trace_above_detailed(*alpha, q);
  Outcome o{r.value.str(), rational_json(r.value), nullptr, 0};
  o.trace = {{"step", step_name(r.step)}, {"j", r.j}, {"n", integer_json(r.padded_den)}};
  return o;
}

Outcome cmd_trace_below(const Flags& f) {
  const Rational q = Rational::parse(need(f.q, "--q"));
  const SourceSpec src = parse_source(need(f.real, "--real"));
  const BracketingOracle beta = BracketingOracle::from_spec(src.spec);
  if (q.sign() <= 0 || q >= Rational(1)) throw Error(Errc::OutOfRange, q.str() + " is not in (0,1)");
  if (!src.from_gsum && cut(beta, q) == CutSide::Above) {
    throw Error(Errc::OutOfRange, q.str() + " is not below the value");
  }
  const Rational r = src.from_gsum ? gsum_trace_below(beta)(q) : native_trace_below(beta)(q);
  Outcome o{r.str(), rational_json(r), nullptr, 0};
  o.trace = {{"source", src.from_gsum ? "gsum" : "native"}};
  return o;
}

Outcome cmd_fast_term(const Flags& f) {
  const auto alpha = alpha_of(f);
  const Integer b = base_of(f);
  const std::uint64_t n = to_count(need(f.n, "--n"), "--n");
  const FastTermResult r = fast_sum_below_term(*alpha, b, n);
  Outcome o{r.term.str(), term_json(r.term), nullptr, 0};
  json guards = json::array();
  for (const auto& [name, ok] : r.trace.guards) guards.push_back({{"name", name}, {"holds", ok}});
  o.trace = {{"branch", branch_name(r.trace.branch)}, {"resolved_j", r.trace.resolved_j}, {"guards", guards}};
  return o;
}

Outcome cmd_recover(const Flags& f) {
  const auto alpha = alpha_of(f);
  const std::uint64_t n = to_count(need(f.n, "--n"), "--n");
  const Integer hn = parse_integer(need(f.h, "--h"));
  const Integer y = recover_next_value(*alpha, n, hn);
  return {y.get_str(), integer_json(y), nullptr, 0};
}

Outcome cmd_convert(const Flags& f) {
  const SourceSpec src = parse_source(need(f.real, "--real"));
  const Integer b = parse_integer(need(f.base, "--base"));
  const std::uint64_t n = to_count(need(f.n, "--n"), "--n");
  const BracketingOracle beta = BracketingOracle::from_spec(src.spec);
  const TraceFn t = src.from_gsum ? gsum_trace_below(beta) : native_trace_below(beta);
  const CutFn d = src.from_gsum ? gsum_cut(beta) : native_cut(beta);
  const Rational g = gsum_from_trace_and_cut(t, d, b, n);
  Outcome o{g.str(), rational_json(g), nullptr, 0};
  o.trace = {{"source", src.from_gsum ? "gsum" : "native"}};
  return o;
}

Outcome cmd_verify(const Flags& f, std::ostream& err) {
  VerifyOptions v;
  if (!f.schedule.empty()) v.schedule = f.schedule;
  if (!f.real.empty()) {
    RealSpec::parse(f.real);
    v.real = f.real;
  }
  if (!f.base.empty()) v.base = base_of(f);
  v.horizon = opt_count(f.horizon, "--horizon");
  v.max = opt_count(f.max, "--max");
  v.terms = opt_count(f.terms, "--terms");
  v.count = opt_count(f.count, "--count");
  v.from = opt_count(f.from, "--from");
  const VerifyReport report = verify_suite(need(f.suite, "--suite"), v, err);

  Outcome o;
  json checks = json::array();
  std::string text;
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    text += (c.pass ? "PASS " : "FAIL ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")") + "\n";
  }
  text += std::to_string(report.passed()) + " passed, " + std::to_string(report.failed()) + " failed";
  o.text = text;
  o.result = {{"suite", report.suite}, {"passed", report.passed()}, {"failed", report.failed()}, {"checks", checks}};
  o.exit_code = report.ok() ? 0 : 1;
  return o;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::ScheduleExhausted:
    case Errc::GuardFailed:
    case Errc::InconsistentOracles:
    case Errc::SearchFailed:
      return 3;
    default:
      return 2;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact digit expansions, sum approximations and schedule-driven irrationals", "vbs"};
  app.require_subcommand(1);
  app.set_help_flag("-h,--help", "print this help");
  Flags f;

  const auto flag = [&](CLI::App* sub, const std::string& name, std::string& slot, const std::string& help) {
    sub->add_option(name, slot, help);
  };
  const std::map<std::string, std::string> help = {
      {"--rat", "rational c/d"},           {"--base", "base N"},
      {"--real", "real spec"},             {"--schedule", "schedule id or @file.json"},
      {"--q", "rational query c/d"},       {"--terms", "number of terms"},
      {"--n", "index"},                    {"--h", "value h(n)"},
      {"--horizon", "digit horizon"},      {"--max", "upper limit"},
      {"--from", "first digit position"},  {"--count", "number of items"},
      {"--suite", "verification suite"},
  };
  const std::map<std::string, std::string*> slots = {
      {"--rat", &f.rat},     {"--base", &f.base},       {"--real", &f.real}, {"--schedule", &f.schedule},
      {"--q", &f.q},         {"--terms", &f.terms},     {"--n", &f.n},       {"--h", &f.h},
      {"--horizon", &f.horizon}, {"--max", &f.max},     {"--from", &f.from}, {"--count", &f.count},
      {"--suite", &f.suite},
  };

  struct Verb {
    std::string name;
    std::string description;
    std::vector<std::string> flags;
    std::function<Outcome()> run;
  };
  const std::vector<Verb> verbs = {
      {"analyze", "expansion shape of a rational", {"--rat", "--base"}, [&] { return cmd_analyze(f); }},
      {"digits", "digit window of a rational or real", {"--rat", "--real", "--base", "--from", "--count"},
       [&] { return cmd_digits(f); }},
      {"sum-below", "sum approximation from below", {"--real", "--base", "--terms"},
       [&] { return cmd_sum(f, false); }},
      {"sum-above", "sum approximation from above", {"--real", "--base", "--terms"},
       [&] { return cmd_sum(f, true); }},
      {"gsum", "general sum approximation G(b,n)", {"--real", "--base", "--n"}, [&] { return cmd_gsum(f); }},
      {"alpha", "partial sum alpha_n", {"--schedule", "--n"}, [&] { return cmd_alpha(f, false); }},
      {"beta", "upper companion beta_n", {"--schedule", "--n"}, [&] { return cmd_alpha(f, true); }},
      {"cut", "Dedekind cut: 0 iff q is below the value", {"--real", "--schedule", "--q"},
       [&] { return cmd_cut(f); }},
      {"trace-above", "trace function from above of alpha", {"--schedule", "--q"},
       [&] { return cmd_trace_above(f); }},
      {"trace-below", "trace function from below (native:<spec> or gsum:<spec>)", {"--real", "--q"},
       [&] { return cmd_trace_below(f); }},
      {"fast-term", "n-th term from below via the partial-sum fast path", {"--schedule", "--base", "--n"},
       [&] { return cmd_fast_term(f); }},
      {"recover", "recover h(n+1) from h(n) and the general sum", {"--schedule", "--n", "--h"},
       [&] { return cmd_recover(f); }},
      {"convert", "G(b,n) rebuilt from a trace and a cut", {"--real", "--base", "--n"},
       [&] { return cmd_convert(f); }},
      {"verify", "run a verification suite",
       {"--suite", "--schedule", "--real", "--base", "--horizon", "--max", "--terms", "--count", "--from"},
       [&] { return cmd_verify(f, err); }},
  };

  std::map<CLI::App*, const Verb*> by_app;
  for (const auto& verb : verbs) {
    CLI::App* sub = app.add_subcommand(verb.name, verb.description);
    sub->set_help_flag("--help", "print this help");  // -h would clash with --h
    for (const auto& name : verb.flags) flag(sub, name, *slots.at(name), help.at(name));
    sub->add_flag("--json", f.json, "emit a single JSON object");
    by_app.emplace(sub, &verb);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const Verb* verb = nullptr;
  for (CLI::App* sub : app.get_subcommands()) verb = by_app.at(sub);

  try {
    const Outcome o = verb->run();
    if (f.json) {
      out << json{{"ok", o.exit_code == 0}, {"result", o.result}, {"trace", o.trace}}.dump() << "\n";
    } else {
      out << o.text << "\n";
    }
    return o.exit_code;
  } catch (const Error& e) {
    err << e.what() << "\n";
    if (f.json) {
      out << json{{"ok", false},
                  {"result", nullptr},
                  {"trace", {{"error", std::string(errc_name(e.code()))}, {"message", e.what()}}}}
                 .dump()
          << "\n";
    }
    return exit_code_for(e.code());
  }
}

}  // namespace vbs
