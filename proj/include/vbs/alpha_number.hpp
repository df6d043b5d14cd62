// alpha = sum_{i >= 0} P_i^{-h(i)} for a schedule h, with its partial sums
// alpha_j and the upper companions beta_j.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "vbs/power_value.hpp"
#include "vbs/rational.hpp"
#include "vbs/schedule.hpp"

namespace vbs {

/// Thread-safe: the alpha/beta caches are guarded by a mutex, and every
/// accessor is observationally pure.
class AlphaNumber {
 public:
  explicit AlphaNumber(std::shared_ptr<const Schedule> schedule);

  const Schedule& schedule() const { return *schedule_; }
  const std::shared_ptr<const Schedule>& schedule_ptr() const { return schedule_; }

  /// P_i^{h(i)}.  Throws Errc::ScheduleExhausted past the table or the bit budget.
  Integer prime_power(std::uint64_t i) const;

  /// alpha_n = sum_{i <= n} P_i^{-h(i)}, in lowest terms.
  Rational partial(std::uint64_t n) const;

  /// beta_0 = 2^{1-h(0)},  beta_{j+1} = alpha_j + P_{j+1}^{1-h(j+1)}.
  Rational beta(std::uint64_t j) const;

  /// M(j) = P_j^{(j+1) h(j)}.
  PowerValue big_m(std::uint64_t j) const;
  /// M'(j) = h(j+1).
  Integer big_m_prime(std::uint64_t j) const;

 private:
  std::shared_ptr<const Schedule> schedule_;
  mutable std::mutex mutex_;
  mutable std::vector<Rational> partials_;
  mutable std::map<std::uint64_t, Rational> betas_;
};

}  // namespace vbs
