#include "vbs/schedule.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "vbs/error.hpp"
#include "vbs/primes.hpp"

namespace vbs {

namespace {

bool safe_less(const PowerSum& a, const PowerSum& b) {
  try {
    return compare(a, b) == std::strong_ordering::less;
  } catch (const Error& e) {
    if (e.code() == Errc::GuardFailed) return false;
    throw;
  }
}

void require_pair(const Schedule& s, std::uint64_t n, const char* what) {
  if (!s.defined(n) || !s.defined(n + 1)) {
    throw Error(Errc::Undefined, std::string(what) + ": schedule " + s.id() +
                                     " is not defined at " + std::to_string(n) + " and " +
                                     std::to_string(n + 1));
  }
}

// P_n^{2(n+2)(h(n)+1)^3}
PowerSum growth_lhs(const Schedule& s, std::uint64_t n) {
  const Integer& hn = s.value(n);
  const Integer e = 2 * Integer(n + 2) * (hn + 1) * (hn + 1) * (hn + 1);
  return PowerSum::power(Integer(nth_prime(n)), e);
}

}  // namespace

Schedule::Schedule(std::string id, std::vector<PowerValue> values)
    : id_(std::move(id)), values_(std::move(values)) {
  if (values_.empty()) throw Error(Errc::InvalidSchedule, "schedule " + id_ + " has no values");
  exact_.reserve(values_.size());
  for (const auto& v : values_) exact_.push_back(materialize(v));
  for (std::uint64_t n = 0; n < values_.size(); ++n) {
    if (compare(symbolic(n), PowerSum(1)) == std::strong_ordering::less) {
      throw Error(Errc::InvalidSchedule, "schedule " + id_ + ": h(" + std::to_string(n) + ") < 1");
    }
    if (n > 0 && compare(symbolic(n - 1), symbolic(n)) != std::strong_ordering::less) {
      throw Error(Errc::InvalidSchedule,
                  "schedule " + id_ + " is not strictly increasing at " + std::to_string(n));
    }
  }
  flags_.gap_ok = true;
  flags_.growth_ok = true;
  flags_.honest_like = true;
  for (std::uint64_t n = 0; n < values_.size(); ++n) {
    if (!safe_less(PowerSum::power(2, n) - 1, symbolic(n))) flags_.honest_like = false;
    if (n + 1 == values_.size()) break;
    const PowerSum gap_rhs = symbolic(n) * PowerSum(Integer(n + 2)) + PowerSum(1);
    if (!safe_less(gap_rhs, symbolic(n + 1))) flags_.gap_ok = false;
    bool growth = false;
    try {
      growth = check_growth_property(*this, n);
    } catch (const Error&) {
      growth = false;
    }
    if (!growth) flags_.growth_ok = false;
  }
}

const Integer& Schedule::value(std::uint64_t n) const {
  if (!defined(n)) {
    throw Error(Errc::ScheduleExhausted,
                "schedule " + id_ + " has no entry at index " + std::to_string(n));
  }
  if (!exact_[n]) {
    throw Error(Errc::ScheduleExhausted, "schedule " + id_ + " entry " + std::to_string(n) + " = " +
                                             values_[n].str() + " exceeds the bit budget");
  }
  return *exact_[n];
}

PowerSum Schedule::symbolic(std::uint64_t n) const { return PowerSum(form(n)); }

const PowerValue& Schedule::form(std::uint64_t n) const {
  if (!defined(n)) {
    throw Error(Errc::ScheduleExhausted,
                "schedule " + id_ + " has no entry at index " + std::to_string(n));
  }
  return values_[n];
}

bool Schedule::materialized(std::uint64_t n) const { return defined(n) && exact_[n].has_value(); }

std::optional<Integer> schedule_value(const Schedule& s, std::uint64_t n) {
  if (!s.defined(n)) return std::nullopt;
  return s.value(n);
}

std::shared_ptr<const Schedule> builtin_schedule(std::string_view id) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const Schedule>, std::less<>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(id); it != cache.end()) return it->second;

  std::vector<PowerValue> values;
  if (id == "T1") {
    // h(0) = 1, h(n+1) = (n+3) h(n) + 2
    Integer h = 1;
    for (std::uint64_t n = 0; n < 7; ++n) {
      values.push_back(PowerValue::constant(h));
      h = Integer(n + 3) * h + 2;
    }
  } else if (id == "T2") {
    values = {PowerValue::constant(1), PowerValue::constant(3), PowerValue::constant(600000),
              PowerValue::power(5, 3600000, 2, 1)};
  } else if (id == "T3") {
    values = {PowerValue::constant(1), PowerValue::power(2, 32, 1, 1)};
  } else {
    throw Error(Errc::ParseError, "unknown schedule id '" + std::string(id) + "'");
  }
  auto schedule = std::make_shared<const Schedule>(std::string(id), std::move(values));
  cache.emplace(std::string(id), schedule);
  return schedule;
}

namespace {

Integer json_integer(const nlohmann::json& v, const char* what) {
  if (v.is_string()) return parse_integer(v.get<std::string>());
  if (v.is_number_integer()) return Integer(v.dump(), 10);
  throw Error(Errc::ParseError, std::string("schedule field '") + what + "' must be an integer");
}

}  // namespace

Schedule parse_schedule_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("schedule json: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string() || !doc.contains("values") ||
      !doc["values"].is_array()) {
    throw Error(Errc::ParseError, "schedule json needs a string 'id' and an array 'values'");
  }
  std::map<std::uint64_t, PowerValue> entries;
  for (const auto& entry : doc["values"]) {
    if (!entry.is_object() || !entry.contains("i") || !entry["i"].is_number_unsigned()) {
      throw Error(Errc::ParseError, "schedule entry needs a natural 'i'");
    }
    const auto index = entry["i"].get<std::uint64_t>();
    PowerValue value;
    if (entry.contains("int")) {
      value = PowerValue::constant(json_integer(entry["int"], "int"));
    } else if (entry.contains("pow") && entry["pow"].is_object()) {
      const auto& p = entry["pow"];
      for (const char* key : {"c", "b", "e", "a"}) {
        if (!p.contains(key)) throw Error(Errc::ParseError, std::string("pow entry lacks '") + key + "'");
      }
      const Integer c = json_integer(p["c"], "c");
      const Integer b = json_integer(p["b"], "b");
      const Integer e = json_integer(p["e"], "e");
      if (sgn(c) <= 0 || b < 2 || sgn(e) < 0) {
        throw Error(Errc::ParseError, "pow entry needs c >= 1, b >= 2, e >= 0");
      }
      value = PowerValue::power(b, e, c, json_integer(p["a"], "a"));
    } else {
      throw Error(Errc::ParseError, "schedule entry needs 'int' or 'pow'");
    }
    if (!entries.emplace(index, value).second) {
      throw Error(Errc::ParseError, "duplicate schedule index " + std::to_string(index));
    }
  }
  std::vector<PowerValue> values;
  for (const auto& [index, value] : entries) {
    if (index != values.size()) {
      throw Error(Errc::ParseError, "schedule indices must be contiguous from 0");
    }
    values.push_back(value);
  }
  return Schedule(doc["id"].get<std::string>(), std::move(values));
}

Schedule load_schedule_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open schedule file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_schedule_json(buf.str());
}

std::shared_ptr<const Schedule> resolve_schedule(std::string_view ref) {
  if (!ref.empty() && ref.front() == '@') {
    return std::make_shared<const Schedule>(load_schedule_file(std::string(ref.substr(1))));
  }
  return builtin_schedule(ref);
}

std::variant<Integer, ExceedsBudget> canonical_g(std::uint64_t j, std::uint64_t bit_budget) {
  Integer g = 1;
  for (std::uint64_t level = 1; level <= j; ++level) {
    const std::uint64_t p = nth_prime(level - 1);
    const Integer e = 2 * Integer(level + 1) * (g + 1) * (g + 1) * (g + 1);
    const PowerValue form = PowerValue::power(Integer(p), e);
    auto value = materialize(form, bit_budget);
    if (!value) {
      Integer log2p = Integer(bit_length(Integer(p)) - 1);
      return ExceedsBudget{level, form, e * log2p};
    }
    g = *value;
  }
  return g;
}

HonestDescriptor canonical_g_descriptor() {
  HonestDescriptor d;
  d.name = "canonical-g";
  d.evaluate = [](std::uint64_t x, std::uint64_t budget) -> std::optional<Integer> {
    auto r = canonical_g(x, budget);
    if (auto* v = std::get_if<Integer>(&r)) return *v;
    return std::nullopt;
  };
  d.graph = [](std::uint64_t x, const Integer& y) {
    // Evaluate with a budget just above |y|: any overflow means g(x) > y.
    auto r = canonical_g(x, bit_length(y) + 1);
    if (auto* v = std::get_if<Integer>(&r)) return *v == y;
    return false;
  };
  return d;
}

HonestDescriptor power_of_two_descriptor() {
  HonestDescriptor d;
  d.name = "2^x";
  d.evaluate = [](std::uint64_t x, std::uint64_t budget) -> std::optional<Integer> {
    if (x + 1 > budget) return std::nullopt;
    return Integer(1) << x;
  };
  d.graph = [](std::uint64_t x, const Integer& y) {
    return sgn(y) > 0 && bit_length(y) == x + 1 && mpz_scan1(y.get_mpz_t(), 0) == x;
  };
  return d;
}

HonestDescriptor schedule_descriptor(std::shared_ptr<const Schedule> s) {
  HonestDescriptor d;
  d.name = s->id();
  d.evaluate = [s](std::uint64_t x, std::uint64_t budget) -> std::optional<Integer> {
    if (!s->defined(x)) return std::nullopt;
    return materialize(s->form(x), budget);
  };
  d.graph = [s](std::uint64_t x, const Integer& y) { return graph_contains(*s, x, y); };
  return d;
}

bool graph_contains(const Schedule& s, std::uint64_t x, const Integer& y) {
  if (!s.defined(x)) return false;
  if (s.materialized(x)) return s.value(x) == y;
  return compare(s.symbolic(x), PowerSum(y)) == std::strong_ordering::equal;
}

bool graph_contains(const HonestDescriptor& f, std::uint64_t x, const Integer& y) {
  return f.graph(x, y);
}

bool check_growth_property(const Schedule& s, std::uint64_t n) {
  require_pair(s, n, "growth property");
  return compare(growth_lhs(s, n), s.symbolic(n + 1)) == std::strong_ordering::less;
}

PowerValue zero_run_bound(const Schedule& s, std::uint64_t j) {
  const Integer e = Integer(j + 1) * s.value(j);
  return PowerValue::power(Integer(nth_prime(j)), e);
}

bool check_square_inequality(const Schedule& s, std::uint64_t j) {
  require_pair(s, j, "square inequality");
  const PowerSum m(zero_run_bound(s, j));
  return compare(m.squared() + m + PowerSum(1), s.symbolic(j + 1)) == std::strong_ordering::less;
}

}  // namespace vbs
