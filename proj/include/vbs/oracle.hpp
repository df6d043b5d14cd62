// Irrationals in (0,1) given as deterministic nested rational brackets.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "vbs/alpha_number.hpp"
#include "vbs/expansion.hpp"
#include "vbs/rational.hpp"

namespace vbs {

/// sqrt(k) - floor(sqrt(k)) for a non-square k.
struct SqrtSpec {
  Integer k;
};

/// alpha^h for a schedule id ("T1", "@file.json", ...).
struct AlphaSpec {
  std::string schedule;
};

/// "sqrt:<k>" or "alpha:<scheduleId>"; lowercase, no whitespace.
class RealSpec {
 public:
  explicit RealSpec(SqrtSpec s);
  explicit RealSpec(AlphaSpec s);

  static RealSpec parse(std::string_view text);
  std::string str() const;

  const std::variant<SqrtSpec, AlphaSpec>& kind() const { return kind_; }

 private:
  std::variant<SqrtSpec, AlphaSpec> kind_;
};

struct Bracket {
  Rational lower;
  Rational upper;
};

enum class CutSide { Below, Above };

namespace detail {
class BracketSource;
}

/// refine(n) returns lower < value < upper with upper - lower <= 2^{-n};
/// lower is nondecreasing and upper nonincreasing in n.  The represented
/// value is promised irrational.  Instances are immutable and may be shared
/// across threads.
class BracketingOracle {
 public:
  static BracketingOracle sqrt(const Integer& k);
  static BracketingOracle alpha(std::shared_ptr<const AlphaNumber> alpha);
  static BracketingOracle from_spec(const RealSpec& spec);

  /// Oracle for 1 - value.
  BracketingOracle complement() const;

  /// Throws Errc::ScheduleExhausted when an alpha bracket needs entries (or
  /// precision) beyond its schedule.
  Bracket refine(std::uint64_t n) const;

  const RealSpec& spec() const { return *spec_; }
  bool complemented() const { return complemented_; }
  std::string describe() const;

 private:
  BracketingOracle(std::shared_ptr<const detail::BracketSource> source,
                   std::shared_ptr<const RealSpec> spec, bool complemented);

  std::shared_ptr<const detail::BracketSource> source_;
  std::shared_ptr<const RealSpec> spec_;
  bool complemented_ = false;
};

/// Below iff q < value.  Never returns for q equal to the value, which the
/// irrationality promise rules out.
CutSide cut(const BracketingOracle& o, const Rational& q);

/// First n base-b digits of the value, obtained by refining until the
/// bracket sits inside a single digit cell.
DigitWindow real_prefix(const BracketingOracle& o, const Integer& b, std::uint64_t n);

Integer real_digit_at(const BracketingOracle& o, const Integer& b, std::uint64_t i);

/// Base-b digits of 0 <= c < b^n, most significant first, padded to n.
std::vector<Integer> integer_digits(const Integer& c, const Integer& b, std::uint64_t n);

}  // namespace vbs
