#include <gtest/gtest.h>

#include <random>

#include "vbs/error.hpp"
#include "vbs/oracle.hpp"

using vbs::BracketingOracle;
using vbs::CutSide;
using vbs::Integer;
using vbs::Rational;
using vbs::RealSpec;

namespace {

// First 150 decimals of sqrt(2) - 1.
const char* kSqrt2Digits =
    "414213562373095048801688724209698078569671875376948073176679737990732478462107038850387534327641572735"
    "013846230912297024924836055850737212644121497099";

BracketingOracle sqrt2() { return BracketingOracle::sqrt(2); }

BracketingOracle alpha_t1() { return BracketingOracle::from_spec(RealSpec::parse("alpha:T1")); }

}  // namespace

TEST(Oracle, SqrtRefineExamples) {
  auto b = sqrt2().refine(3);
  EXPECT_EQ(b.lower.str(), "3/8");
  EXPECT_EQ(b.upper.str(), "1/2");
  b = sqrt2().refine(0);
  EXPECT_EQ(b.lower.str(), "0/1");
  EXPECT_EQ(b.upper.str(), "1/1");
}

TEST(Oracle, AlphaRefine) {
  const auto alpha = alpha_t1();
  const Rational a1 = Rational::parse("245/486");
  // Width 3^-4 already meets 2^-4; the 5^-21 bracket takes over from n = 7.
  auto b = alpha.refine(4);
  EXPECT_EQ(b.lower.str(), "1/2");
  EXPECT_EQ(b.upper.str(), "83/162");
  b = alpha.refine(7);
  EXPECT_EQ(b.lower, a1);
  EXPECT_EQ(b.upper, a1 + vbs::inverse_power(5, 21));
}

TEST(Oracle, MonotoneNesting) {
  for (const auto& o : {sqrt2(), alpha_t1(), BracketingOracle::sqrt(3), sqrt2().complement()}) {
    for (std::uint64_t n = 0; n < 64; ++n) {
      const auto a = o.refine(n);
      ASSERT_LT(a.lower, a.upper);
      ASSERT_LE(a.upper - a.lower, vbs::inverse_power(2, n));
      for (std::uint64_t m = n + 1; m <= 64; m += 7) {
        const auto b = o.refine(m);
        ASSERT_LE(a.lower, b.lower) << o.describe() << " " << n << " " << m;
        ASSERT_LE(b.upper, a.upper) << o.describe() << " " << n << " " << m;
      }
    }
  }
}

TEST(Oracle, CutExamples) {
  EXPECT_EQ(vbs::cut(sqrt2(), Rational::parse("2/5")), CutSide::Below);
  EXPECT_EQ(vbs::cut(sqrt2(), Rational::parse("1/2")), CutSide::Above);
  EXPECT_EQ(vbs::cut(alpha_t1(), Rational::parse("245/486")), CutSide::Below);
  EXPECT_EQ(vbs::cut(alpha_t1(), Rational::parse("51/100")), CutSide::Above);
}

TEST(Oracle, CutAgreesWithSquaring) {
  // q < sqrt(2) - 1  iff  (q + 1)^2 < 2.
  std::mt19937_64 rng(3);
  for (int k = 0; k < 1000; ++k) {
    const std::uint64_t den = 2 + rng() % 100000;
    const Rational q{Integer(rng() % den), Integer(den)};
    const Rational s = (q + 1) * (q + 1);
    EXPECT_EQ(vbs::cut(sqrt2(), q) == CutSide::Below, s < Rational(2)) << q;
  }
}

TEST(Oracle, CutIsMonotone) {
  std::mt19937_64 rng(5);
  const auto alpha = alpha_t1();
  for (int k = 0; k < 1000; ++k) {
    Rational a(Integer(rng() % 10000), Integer(10000));
    Rational b(Integer(rng() % 10000), Integer(10000));
    if (b < a) std::swap(a, b);
    if (vbs::cut(alpha, b) == CutSide::Below) EXPECT_EQ(vbs::cut(alpha, a), CutSide::Below);
  }
}

TEST(Oracle, RealPrefixExamples) {
  EXPECT_EQ(vbs::real_prefix(sqrt2(), 10, 5).str(), "4,1,4,2,1");
  EXPECT_EQ(vbs::real_prefix(alpha_t1(), 10, 9).str(), "5,0,4,1,1,5,2,2,6");
  EXPECT_EQ(vbs::real_prefix(alpha_t1(), 2, 8).str(), "1,0,0,0,0,0,0,1");
  EXPECT_EQ(vbs::real_digit_at(alpha_t1(), 3, 2), 1);
  EXPECT_EQ(vbs::real_prefix(alpha_t1().complement(), 2, 4).str(), "0,1,1,1");
}

TEST(Oracle, SqrtPrefixMatchesReference) {
  const auto w = vbs::real_prefix(sqrt2(), 10, 150);
  std::string digits;
  for (const auto& d : w.digits) digits += d.get_str();
  EXPECT_EQ(digits, kSqrt2Digits);
}

TEST(Oracle, PrefixAgreesWithCut) {
  for (const auto& o : {sqrt2(), alpha_t1(), BracketingOracle::sqrt(7)}) {
    for (const Integer b : {Integer(2), Integer(3), Integer(10), Integer(16)}) {
      const auto w = vbs::real_prefix(o, b, 40);
      Rational value(0);
      for (std::uint64_t i = 0; i < w.digits.size(); ++i) {
        ASSERT_LT(w.digits[i], b);
        value += Rational(w.digits[i]) * vbs::inverse_power(b, i + 1);
      }
      EXPECT_EQ(vbs::cut(o, value), CutSide::Below);
      EXPECT_EQ(vbs::cut(o, value + vbs::inverse_power(b, 40)), CutSide::Above);
    }
  }
}

TEST(Oracle, HugeBase) {
  const Integer b = vbs::ipow(10, 50);
  const auto w = vbs::real_prefix(sqrt2(), b, 2);
  EXPECT_EQ(w.digits[0].get_str(), std::string(kSqrt2Digits).substr(0, 50));
}

TEST(Oracle, Specs) {
  EXPECT_EQ(RealSpec::parse("sqrt:2").str(), "sqrt:2");
  EXPECT_EQ(RealSpec::parse("alpha:T1").str(), "alpha:T1");
  for (const char* bad : {"sqrt:4", "sqrt:0", "sqrt:-2", "sqrt:", "Sqrt:2", "pi", "alpha:", "alpha: T1"}) {
    EXPECT_THROW(RealSpec::parse(bad), vbs::Error) << bad;
  }
  EXPECT_EQ(sqrt2().complement().describe(), "1-(sqrt:2)");
  EXPECT_FALSE(sqrt2().complement().complement().complemented());
}

TEST(Oracle, AlphaPrecisionHorizon) {
  // T2 carries brackets up to ~1.39e6 bits; beyond that the table runs out.
  const auto t2 = BracketingOracle::from_spec(RealSpec::parse("alpha:T2"));
  EXPECT_NO_THROW(t2.refine(1'000'000));
  try {
    t2.refine(2'000'000);
    FAIL();
  } catch (const vbs::Error& e) {
    EXPECT_EQ(e.code(), vbs::Errc::ScheduleExhausted);
  }
}
