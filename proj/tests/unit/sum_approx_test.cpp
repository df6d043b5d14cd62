#include <gtest/gtest.h>

#include "vbs/sum_approx.hpp"

using vbs::BracketingOracle;
using vbs::Integer;
using vbs::Rational;

namespace {

BracketingOracle sqrt2() { return BracketingOracle::sqrt(2); }
BracketingOracle alpha_t1() { return BracketingOracle::from_spec(vbs::RealSpec::parse("alpha:T1")); }

std::string terms(const vbs::ApproxSequence& s) {
  std::string out;
  for (const auto& t : s.terms) out += (out.empty() ? "" : " ") + t.str();
  return out;
}

}  // namespace

TEST(SumApprox, BelowExamples) {
  EXPECT_EQ(terms(vbs::sum_below(sqrt2(), 10, 2)), "4*10^-1 1*10^-2");
  EXPECT_EQ(vbs::sum_below(sqrt2(), 10, 13).terms.back().str(), "9*10^-14");
  EXPECT_EQ(terms(vbs::sum_below(alpha_t1(), 10, 3)), "5*10^-1 4*10^-3 1*10^-4");
  EXPECT_EQ(vbs::partial_value(vbs::sum_below(sqrt2(), 10, 5)).str(), "41421/100000");
}

TEST(SumApprox, AboveExamples) {
  EXPECT_EQ(terms(vbs::sum_above(sqrt2(), 10, 1)), "5*10^-1");
  EXPECT_EQ(terms(vbs::sum_above(sqrt2(), 10, 2)), "5*10^-1 8*10^-2");
  EXPECT_EQ(terms(vbs::sum_above(alpha_t1(), 2, 1)), "1*2^-2");
}

TEST(SumApprox, GeneralSums) {
  EXPECT_EQ(vbs::general_sum(sqrt2(), 1, 5), Rational(0));
  EXPECT_EQ(vbs::general_sum(sqrt2(), 0, 5), Rational(0));
  EXPECT_EQ(vbs::general_sum(sqrt2(), 10, 0), Rational(0));
  EXPECT_EQ(vbs::general_sum(sqrt2(), 10, 1).str(), "2/5");
  EXPECT_EQ(vbs::general_sum(sqrt2(), 2, 1).str(), "1/4");
  EXPECT_EQ(vbs::general_sum_above(sqrt2(), 0, 3), Rational(0));
  EXPECT_EQ(vbs::general_sum_above(sqrt2(), 10, 2).str(), "2/25");
  EXPECT_EQ(vbs::general_sum_above(alpha_t1(), 2, 1).str(), "1/4");
}

TEST(SumApprox, Serialization) {
  const auto s = vbs::sum_below(sqrt2(), 10, 2);
  EXPECT_EQ(s.str(), "4*10^-1\n1*10^-2\npartial=41/100");
  EXPECT_EQ(vbs::partial_value(vbs::ApproxSequence{10, {}}), Rational(0));
}

TEST(SumApprox, SandwichAndCompleteness) {
  for (const auto& o : {sqrt2(), alpha_t1()}) {
    for (const Integer b : {Integer(2), Integer(3), Integer(10), Integer(16)}) {
      for (std::uint64_t n : {1, 7, 25, 50}) {
        const auto below = vbs::sum_below(o, b, n);
        const auto above = vbs::sum_above(o, b, n);
        std::uint64_t last = 0;
        for (const auto& t : below.terms) {
          ASSERT_GE(t.digit, 1);
          ASSERT_LT(t.digit, b);
          ASSERT_GT(t.exponent, last);
          last = t.exponent;
        }
        const Rational lo = vbs::partial_value(below);
        const Rational hi = Rational(1) - vbs::partial_value(above);
        const Rational eps_lo = vbs::inverse_power(b, below.terms.back().exponent);
        const Rational eps_hi = vbs::inverse_power(b, above.terms.back().exponent);
        EXPECT_EQ(vbs::cut(o, lo), vbs::CutSide::Below);
        EXPECT_EQ(vbs::cut(o, lo + eps_lo), vbs::CutSide::Above);
        EXPECT_EQ(vbs::cut(o, hi), vbs::CutSide::Above);
        EXPECT_EQ(vbs::cut(o, hi - eps_hi), vbs::CutSide::Below);
        const Rational defect = hi - lo;
        EXPECT_GT(defect, Rational(0));
        EXPECT_LT(defect, eps_lo + eps_hi);
        EXPECT_EQ(vbs::general_sum(o, b, n), below.terms.back().value());
      }
    }
  }
}
