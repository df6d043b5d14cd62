// Base-b expansions of rationals.
//
// Digit positions are 1-based: position 1 is the first digit after the point.
// The expansion of q is the unique digit sequence with
//   (0.D1...Dn)_b <= q < (0.D1...Dn)_b + b^{-n}   for every n,
// so finite expansions end in zeros, never in (b-1)^omega.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vbs/power_value.hpp"
#include "vbs/rational.hpp"

namespace vbs {

enum class ExpansionKind { Finite, Periodic };

struct ExpansionShape {
  Integer base;
  ExpansionKind kind = ExpansionKind::Finite;
  Integer d1;  // largest divisor of den coprime to base
  Integer d2;  // den / d1; every prime of d2 divides base
  std::uint64_t preperiod = 0;          // least s with d2 | base^s
  Integer period = 0;                   // Periodic only: ord of base mod d1
  std::uint64_t finite_length = 0;      // Finite only (== preperiod)
};

struct DigitWindow {
  Integer base;
  std::uint64_t start = 1;
  std::vector<Integer> digits;

  std::string str() const;  // comma-separated decimal digits
};

struct NonzeroDigit {
  std::uint64_t position = 0;
  Integer digit;
};

void require_base(const Integer& b);

/// digitAt: floor(b^i q) mod b for 0 <= q < 1, via modular exponentiation.
Integer digit_at(const Rational& q, const Integer& b, std::uint64_t i);

/// Least e >= 1 with b^e == 1 (mod d1); 1 when d1 == 1.  Throws Errc::NotCoprime.
Integer multiplicative_order(const Integer& b, const Integer& d1);

/// expansionShape for 0 < q < 1.
ExpansionShape expansion_shape(const Rational& q, const Integer& b);

/// First n digits, streamed by remainder multiplication.
DigitWindow expand_prefix(const Rational& q, const Integer& b, std::uint64_t n);

/// Digits start .. start+count-1; jumps to `start` by modular exponentiation.
DigitWindow expand_window(const Rational& q, const Integer& b, std::uint64_t start, std::uint64_t count);

/// Lazy digit source for 0 <= q < 1.
class DigitStream {
 public:
  DigitStream(const Rational& q, const Integer& b, std::uint64_t start = 1);

  /// Digit at position(), then advances.
  Integer next();
  /// Position of the digit the next call to next() returns.
  std::uint64_t position() const { return position_; }
  /// True once every remaining digit is zero.
  bool exhausted() const { return sgn(remainder_) == 0; }

 private:
  Integer base_;
  Integer den_;
  Integer remainder_;  // q * b^{position-1} mod 1, scaled by den
  std::uint64_t position_;
  bool small_base_;
  unsigned long base_ui_ = 0;
};

/// Position and value of the n-th nonzero digit among positions 1..cap, or
/// nullopt when fewer than n nonzero digits occur there.  Small denominators
/// jump whole periods; large ones are streamed with early exit, so `cap` is
/// never materialized.
std::optional<NonzeroDigit> nth_nonzero_digit(const Rational& q, const Integer& b, std::uint64_t n,
                                              const PowerValue& cap);

}  // namespace vbs
