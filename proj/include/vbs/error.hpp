// Error reporting for the vbs library.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vbs {

enum class Errc {
  ZeroDenominator,
  BadBase,
  OutOfRange,
  NotCoprime,
  ParseError,
  Undefined,
  SieveLimit,
  PremiseViolated,
  ScheduleExhausted,
  GuardFailed,
  SearchFailed,
  InconsistentOracles,
  UnknownSuite,
  InvalidSchedule,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the Errc codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace vbs
