// Self-check suites behind `vbs verify`.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vbs/rational.hpp"

namespace vbs {

struct VerifyOptions {
  std::optional<std::string> schedule;
  std::optional<std::string> real;
  std::optional<Integer> base;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> max;
  std::optional<std::uint64_t> terms;
  std::optional<std::uint64_t> count;
  std::optional<std::uint64_t> from;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::vector<CheckResult> checks;

  std::size_t passed() const;
  std::size_t failed() const { return checks.size() - passed(); }
  bool ok() const { return failed() == 0; }
};

const std::vector<std::string>& suite_names();

/// Runs a suite.  Progress goes to `progress`; throws Errc::UnknownSuite.
VerifyReport verify_suite(const std::string& name, const VerifyOptions& options, std::ostream& progress);

}  // namespace vbs
