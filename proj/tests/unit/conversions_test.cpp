#include <gtest/gtest.h>

#include <random>

#include "vbs/alpha_engine.hpp"
#include "vbs/conversions.hpp"
#include "vbs/error.hpp"

using vbs::BracketingOracle;
using vbs::Integer;
using vbs::Rational;

namespace {

BracketingOracle sqrt2() { return BracketingOracle::sqrt(2); }
BracketingOracle alpha_t1() { return BracketingOracle::from_spec(vbs::RealSpec::parse("alpha:T1")); }
Rational r(const char* text) { return Rational::parse(text); }

}  // namespace

TEST(Conversions, TraceAndCutFromGeneralSum) {
  const auto g = vbs::gsum_source(sqrt2());
  EXPECT_EQ(vbs::trace_below_from_gsum(g, r("2/5")).str(), "51/125");
  EXPECT_EQ(vbs::trace_below_from_gsum(g, r("1/2")).str(), "3/8");
  EXPECT_EQ(vbs::trace_below_from_gsum(vbs::gsum_source(alpha_t1()), r("1/3")).str(), "4/9");
  EXPECT_EQ(vbs::cut_from_gsum(g, r("2/5")), 0);
  EXPECT_EQ(vbs::cut_from_gsum(g, r("1/2")), 1);
  EXPECT_EQ(vbs::cut_from_gsum(g, r("3/7")), 1);
}

TEST(Conversions, GeneralSumFromNativeTraceAndCut) {
  const auto t = vbs::native_trace_below(sqrt2());
  const auto d = vbs::native_cut(sqrt2());
  EXPECT_EQ(vbs::gsum_from_trace_and_cut(t, d, 10, 1).str(), "2/5");
  EXPECT_EQ(vbs::gsum_from_trace_and_cut(t, d, 10, 2).str(), "1/100");
  EXPECT_EQ(vbs::gsum_from_trace_and_cut(t, d, 1, 7), Rational(0));
  EXPECT_EQ(vbs::gsum_from_trace_and_cut(t, d, 10, 0), Rational(0));
}

TEST(Conversions, RoundTrip) {
  for (const auto& beta : {sqrt2(), alpha_t1()}) {
    const auto t = vbs::gsum_trace_below(beta);
    const auto d = vbs::gsum_cut(beta);
    for (const Integer b : {Integer(2), Integer(10)}) {
      for (std::uint64_t n = 1; n <= 25; n += 4) {
        EXPECT_EQ(vbs::gsum_from_trace_and_cut(t, d, b, n), vbs::general_sum(beta, b, n))
            << beta.describe() << " b=" << b << " n=" << n;
      }
    }
  }
}

TEST(Conversions, TraceContractAndCutEquivalence) {
  for (const auto& beta : {sqrt2(), alpha_t1()}) {
    const auto t = vbs::gsum_trace_below(beta);
    const auto d = vbs::gsum_cut(beta);
    std::mt19937_64 rng(23);
    for (int k = 0; k < 200; ++k) {
      const std::uint64_t den = 2 + rng() % 5000;
      const Rational q{Integer(1 + rng() % (den - 1)), Integer(den)};
      const bool below = vbs::cut(beta, q) == vbs::CutSide::Below;
      EXPECT_EQ(d(q), below ? 0 : 1) << q;
      if (below) {
        const Rational next = t(q);
        EXPECT_LT(q, next);
        EXPECT_EQ(vbs::cut(beta, next), vbs::CutSide::Below) << q;
      }
    }
  }
}

TEST(Conversions, FromAboveMirror) {
  const auto a = std::make_shared<const vbs::AlphaNumber>(vbs::builtin_schedule("T1"));
  const auto beta = BracketingOracle::alpha(a);
  const vbs::TraceFn t_above = [a](const Rational& q) { return vbs::trace_above(*a, q); };
  const vbs::CutFn d = [a](const Rational& q) { return vbs::dedekind_cut(*a, q); };
  for (std::uint64_t n = 1; n <= 8; ++n) {
    EXPECT_EQ(vbs::gsum_above_from_trace_and_cut(t_above, d, 2, n), vbs::general_sum_above(beta, 2, n)) << n;
  }
  const auto g_above = vbs::gsum_above_source(sqrt2());
  std::mt19937_64 rng(29);
  for (int k = 0; k < 100; ++k) {
    const std::uint64_t den = 2 + rng() % 1000;
    const Rational q{Integer(1 + rng() % (den - 1)), Integer(den)};
    const bool above = vbs::cut(sqrt2(), q) == vbs::CutSide::Above;
    EXPECT_EQ(vbs::cut_from_gsum_above(g_above, q), above ? 1 : 0) << q;
    if (above) {
      const Rational t = vbs::trace_above_from_gsum_above(g_above, q);
      EXPECT_LT(t, q);
      EXPECT_EQ(vbs::cut(sqrt2(), t), vbs::CutSide::Above);
    }
  }
}

TEST(Conversions, InconsistentOraclesAreReported) {
  // A trace for sqrt(2)-1 paired with the cut of sqrt(3)-1 cannot agree on digits.
  const auto t = vbs::native_trace_below(sqrt2());
  const auto d = vbs::native_cut(BracketingOracle::sqrt(3));
  try {
    vbs::gsum_from_trace_and_cut(t, d, 10, 3, 1000);
    FAIL();
  } catch (const vbs::Error& e) {
    EXPECT_EQ(e.code(), vbs::Errc::InconsistentOracles);
  }
  // Native traces refuse the wrong side instead of searching forever.
  try {
    vbs::native_trace_below(sqrt2())(r("1/2"));
    FAIL();
  } catch (const vbs::Error& e) {
    EXPECT_EQ(e.code(), vbs::Errc::OutOfRange);
  }
  EXPECT_THROW(vbs::native_trace_above(sqrt2())(r("2/5")), vbs::Error);
  EXPECT_LT(vbs::native_trace_above(sqrt2())(r("1/2")), r("1/2"));
  // A trace that never moves is inconsistent on its own.
  const vbs::TraceFn stuck = [](const Rational& q) { return q; };
  EXPECT_THROW(vbs::gsum_from_trace_and_cut(stuck, vbs::native_cut(sqrt2()), 10, 1), vbs::Error);
}
