#include "vbs/error.hpp"

namespace vbs {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::BadBase: return "BadBase";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::ParseError: return "ParseError";
    case Errc::Undefined: return "Undefined";
    case Errc::SieveLimit: return "SieveLimit";
    case Errc::PremiseViolated: return "PremiseViolated";
    case Errc::ScheduleExhausted: return "ScheduleExhausted";
    case Errc::GuardFailed: return "GuardFailed";
    case Errc::SearchFailed: return "SearchFailed";
    case Errc::InconsistentOracles: return "InconsistentOracles";
    case Errc::UnknownSuite: return "UnknownSuite";
    case Errc::InvalidSchedule: return "InvalidSchedule";
  }
  return "Unknown";
}

}  // namespace vbs
