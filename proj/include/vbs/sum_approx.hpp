// Base-b sum approximations from below and above, and the general sums
// G(b, n), extracted from a bracketing oracle.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vbs/oracle.hpp"
#include "vbs/rational.hpp"

namespace vbs {

/// digit * base^{-exponent}, digit in [1, base-1], exponent >= 1.
struct SumTerm {
  Integer base;
  Integer digit;
  std::uint64_t exponent = 0;

  Rational value() const;
  std::string str() const;  // "D*b^-k"
};

/// Terms sharing one base, exponents strictly increasing.
struct ApproxSequence {
  Integer base;
  std::vector<SumTerm> terms;

  std::string str() const;
};

/// The n leading nonzero base-b digits of the value with their positions.
ApproxSequence sum_below(const BracketingOracle& o, const Integer& b, std::uint64_t n);

/// The from-above representation: sum_below of 1 - value.
ApproxSequence sum_above(const BracketingOracle& o, const Integer& b, std::uint64_t n);

/// Value of the n-th term from below; 0 when b < 2 or n = 0.
Rational general_sum(const BracketingOracle& o, const Integer& b, std::uint64_t n);
Rational general_sum_above(const BracketingOracle& o, const Integer& b, std::uint64_t n);

Rational partial_value(const ApproxSequence& s);

}  // namespace vbs
