// Exponent schedules h driving alpha = sum_i P_i^{-h(i)}, plus honest-function
// descriptors and the growth inequalities the constructions depend on.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vbs/power_value.hpp"
#include "vbs/rational.hpp"

namespace vbs {

struct ScheduleFlags {
  bool gap_ok = false;       // h(n+1) > (n+2) h(n) + 1 on every table pair
  bool growth_ok = false;    // growth property on every table pair
  bool honest_like = false;  // h(x) >= 2^x on the table
};

/// Finite table h(0), ..., h(size-1).  Entries keep their symbolic form and
/// are materialized when they fit the bit budget.  Flags are always computed,
/// never supplied.
class Schedule {
 public:
  /// Throws Errc::InvalidSchedule unless the values are >= 1 and strictly increasing.
  Schedule(std::string id, std::vector<PowerValue> values);

  const std::string& id() const { return id_; }
  std::uint64_t size() const { return values_.size(); }
  bool defined(std::uint64_t n) const { return n < values_.size(); }
  const ScheduleFlags& flags() const { return flags_; }

  /// Exact h(n).  Throws Errc::ScheduleExhausted past the table or when the
  /// entry exceeds the bit budget.
  const Integer& value(std::uint64_t n) const;
  /// h(n) as a symbolic sum.  Throws Errc::ScheduleExhausted past the table.
  PowerSum symbolic(std::uint64_t n) const;
  const PowerValue& form(std::uint64_t n) const;
  bool materialized(std::uint64_t n) const;

 private:
  std::string id_;
  std::vector<PowerValue> values_;
  std::vector<std::optional<Integer>> exact_;
  ScheduleFlags flags_;
};

/// scheduleValue: h(n), or nullopt (Undefined) beyond the table.
std::optional<Integer> schedule_value(const Schedule& s, std::uint64_t n);

/// Bundled schedules "T1", "T2", "T3".  Throws Errc::ParseError for other ids.
std::shared_ptr<const Schedule> builtin_schedule(std::string_view id);

/// Schedule file: {"id": ..., "values": [{"i": n, "int": "..."} | {"i": n, "pow": {"c","b","e","a"}}]}
Schedule parse_schedule_json(std::string_view text);
Schedule load_schedule_file(const std::string& path);

/// "T1" style ids or "@path/to/file.json".
std::shared_ptr<const Schedule> resolve_schedule(std::string_view ref);

/// canonicalG result when g(j) does not fit the budget: the first level that
/// overflowed, in closed form P^e, and a lower bound on its bit length.
struct ExceedsBudget {
  std::uint64_t level = 0;
  PowerValue form;
  Integer bits_lower_bound;
};

/// g(0) = 1, g(j+1) = P_j^{2(j+2)(g(j)+1)^3}.
std::variant<Integer, ExceedsBudget> canonical_g(std::uint64_t j, std::uint64_t bit_budget);

/// A partial, budgeted evaluator together with a graph predicate.
struct HonestDescriptor {
  std::string name;
  std::function<std::optional<Integer>(std::uint64_t x, std::uint64_t bit_budget)> evaluate;
  std::function<bool(std::uint64_t x, const Integer& y)> graph;
};

HonestDescriptor canonical_g_descriptor();
HonestDescriptor power_of_two_descriptor();
HonestDescriptor schedule_descriptor(std::shared_ptr<const Schedule> s);

bool graph_contains(const Schedule& s, std::uint64_t x, const Integer& y);
bool graph_contains(const HonestDescriptor& f, std::uint64_t x, const Integer& y);

/// P_n^{2(n+2)(h(n)+1)^3} < h(n+1).  Throws Errc::Undefined past the table.
bool check_growth_property(const Schedule& s, std::uint64_t n);

/// M(j)^2 + M(j) + 1 < h(j+1) with M(j) = P_j^{(j+1)h(j)}.  Throws Errc::Undefined.
bool check_square_inequality(const Schedule& s, std::uint64_t j);

/// M(j) = P_j^{(j+1) h(j)} as a symbolic power.
PowerValue zero_run_bound(const Schedule& s, std::uint64_t j);

}  // namespace vbs
