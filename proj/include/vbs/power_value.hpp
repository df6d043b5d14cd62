// Lazily evaluated huge integers of the form c*p^e + a.
//
// Schedule-driven quantities such as P_j^{(j+1)h(j)} quickly outgrow any
// reasonable memory budget.  PowerValue keeps them symbolic; PowerSum extends
// the idea to finite sums of powers of one base so that expressions such as
// M^2 + M + 1 can be compared exactly without expanding them.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "vbs/rational.hpp"

namespace vbs {

/// Largest integer (in bits) the library materializes eagerly.  Reads
/// VBS_BIT_BUDGET once; defaults to 2^26.
std::uint64_t default_bit_budget();

/// c * p^e + a with c > 0, p >= 2, e >= 0.
struct PowerValue {
  Integer coeff{1};
  Integer base{2};
  Integer exponent{0};
  Integer addend{0};

  static PowerValue constant(const Integer& value);
  static PowerValue power(const Integer& base, const Integer& exponent,
                          const Integer& coeff = 1, const Integer& addend = 0);

  std::string str() const;
};

/// Exact value when it fits within `bit_budget` bits, otherwise nullopt.
std::optional<Integer> materialize(const PowerValue& v, std::uint64_t bit_budget = default_bit_budget());

/// Sum of coeff * base^exp terms over a single base, plus a constant.
class PowerSum {
 public:
  PowerSum() = default;
  PowerSum(const Integer& constant);  // NOLINT(google-explicit-constructor)
  PowerSum(long constant) : PowerSum(Integer(constant)) {}  // NOLINT(google-explicit-constructor)
  PowerSum(const PowerValue& v);  // NOLINT(google-explicit-constructor)

  static PowerSum power(const Integer& base, const Integer& exponent, const Integer& coeff = 1);

  /// Base shared by the non-constant terms; nullopt when the sum is a constant.
  const std::optional<Integer>& base() const { return base_; }
  bool is_constant() const { return !base_.has_value(); }

  /// exponent -> coefficient, highest exponent first; the constant sits at exponent 0.
  const std::map<Integer, Integer, std::greater<>>& terms() const { return terms_; }

  PowerSum& operator+=(const PowerSum& rhs);
  PowerSum& operator-=(const PowerSum& rhs);
  PowerSum& operator*=(const PowerSum& rhs);
  friend PowerSum operator+(PowerSum a, const PowerSum& b) { return a += b; }
  friend PowerSum operator-(PowerSum a, const PowerSum& b) { return a -= b; }
  friend PowerSum operator*(PowerSum a, const PowerSum& b) { return a *= b; }

  PowerSum squared() const { return *this * *this; }

  std::optional<Integer> materialize(std::uint64_t bit_budget = default_bit_budget()) const;

  /// Cheap upper bound on the bit length of the largest term.
  Integer bit_estimate() const;

  std::string str() const;

 private:
  void adopt_base(const std::optional<Integer>& other);
  void normalize();

  std::optional<Integer> base_;
  std::map<Integer, Integer, std::greater<>> terms_;
};

/// Exact three-way comparison.  Sums over the same base are decided
/// symbolically; mixed bases go through log2 interval bounds and fall back to
/// materialization.  Throws Errc::GuardFailed when neither route decides.
std::strong_ordering compare(const PowerSum& lhs, const PowerSum& rhs,
                             std::uint64_t bit_budget = default_bit_budget());

inline bool less_than(const PowerSum& lhs, const PowerSum& rhs) {
  return compare(lhs, rhs) == std::strong_ordering::less;
}

/// Sign of a single-base sum, decided without expanding dominated terms.
int sign(const PowerSum& value);

/// v * p^k with the product kept symbolic.
PowerSum times_power(const PowerSum& v, const Integer& base, const Integer& exponent);

}  // namespace vbs
