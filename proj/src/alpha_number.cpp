#include "vbs/alpha_number.hpp"

#include <string>

#include "vbs/error.hpp"
#include "vbs/primes.hpp"

namespace vbs {

AlphaNumber::AlphaNumber(std::shared_ptr<const Schedule> schedule) : schedule_(std::move(schedule)) {
  if (!schedule_ || schedule_->size() == 0) {
    throw Error(Errc::InvalidSchedule, "alpha needs a non-empty schedule");
  }
}

Integer AlphaNumber::prime_power(std::uint64_t i) const {
  const PowerValue form = PowerValue::power(Integer(nth_prime(i)), schedule_->value(i));
  auto value = materialize(form);
  if (!value) {
    throw Error(Errc::ScheduleExhausted,
                form.str() + " exceeds the bit budget (precision horizon of " + schedule_->id() + ")");
  }
  return *value;
}

Rational AlphaNumber::partial(std::uint64_t n) const {
  {
    std::lock_guard lock(mutex_);
    if (n < partials_.size()) return partials_[n];
  }
  // Computed outside the lock; concurrent callers may duplicate work but
  // always agree on the value.
  std::vector<Rational> fresh;
  Rational sum;
  std::uint64_t start = 0;
  {
    std::lock_guard lock(mutex_);
    start = partials_.size();
    if (start > 0) sum = partials_.back();
  }
  for (std::uint64_t i = start; i <= n; ++i) {
    sum += Rational(Integer(1), prime_power(i));
    fresh.push_back(sum);
  }
  std::lock_guard lock(mutex_);
  for (std::uint64_t i = 0; i < fresh.size(); ++i) {
    if (partials_.size() == start + i) partials_.push_back(fresh[i]);
  }
  return partials_[n];
}

Rational AlphaNumber::beta(std::uint64_t j) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = betas_.find(j); it != betas_.end()) return it->second;
  }
  Rational value;
  if (j == 0) {
    value = Rational(Integer(2), prime_power(0));
  } else {
    value = partial(j - 1) + Rational(Integer(nth_prime(j)), prime_power(j));
  }
  std::lock_guard lock(mutex_);
  return betas_.emplace(j, value).first->second;
}

PowerValue AlphaNumber::big_m(std::uint64_t j) const { return zero_run_bound(*schedule_, j); }

Integer AlphaNumber::big_m_prime(std::uint64_t j) const { return schedule_->value(j + 1); }

}  // namespace vbs
