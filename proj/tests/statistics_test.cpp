#include "icsym/statistics.hpp"

#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include "oracles.hpp"

namespace icsym {
namespace {

constexpr double kZ95 = 1.959963984540054;

TEST(WilsonInterval, NoSuccesses) {
  const Interval ci = wilson_interval(0, 10, 0.95);
  EXPECT_EQ(ci.low, 0.0);
  EXPECT_NEAR(ci.high, kZ95 * kZ95 / (10 + kZ95 * kZ95), 1e-12);
  EXPECT_NEAR(ci.high, 0.2775, 1e-4);
}

TEST(WilsonInterval, AllSuccesses) {
  const Interval ci = wilson_interval(10, 10, 0.95);
  EXPECT_EQ(ci.high, 1.0);
  EXPECT_NEAR(ci.low, 10 / (10 + kZ95 * kZ95), 1e-12);
  EXPECT_NEAR(ci.low, 0.7225, 1e-4);
}

TEST(WilsonInterval, HalfIsCentered) {
  const Interval ci = wilson_interval(5, 10, 0.95);
  EXPECT_NEAR(ci.low + ci.high, 1.0, 1e-15);
  EXPECT_TRUE(ci.contains(0.5));
}

TEST(WilsonInterval, MatchesTextbookFormula) {
  for (std::uint64_t n : {1u, 7u, 100u, 100000u}) {
    for (std::uint64_t s = 0; s <= n; s += std::max<std::uint64_t>(1, n / 13)) {
      const auto [lo, hi] = oracle::wilson_formula(static_cast<double>(s), static_cast<double>(n),
                                                   2.5758293035489004);
      const Interval ci = wilson_interval(s, n, 0.99);
      EXPECT_NEAR(ci.low, std::max(0.0, lo), 1e-12);
      EXPECT_NEAR(ci.high, std::min(1.0, hi), 1e-12);
      const double phat = static_cast<double>(s) / static_cast<double>(n);
      EXPECT_LE(ci.low, phat);
      EXPECT_GE(ci.high, phat);
    }
  }
}

// Property: both bounds are nondecreasing in successes.
TEST(WilsonInterval, MonotoneInSuccesses) {
  for (std::uint64_t n : {1u, 2u, 13u, 250u, 4096u}) {
    for (double c : {0.5, 0.9, 0.95, 0.99, 0.999}) {
      Interval prev = wilson_interval(0, n, c);
      for (std::uint64_t s = 1; s <= n; ++s) {
        const Interval cur = wilson_interval(s, n, c);
        ASSERT_GE(cur.low, prev.low) << n << " " << s << " " << c;
        ASSERT_GE(cur.high, prev.high) << n << " " << s << " " << c;
        prev = cur;
      }
    }
  }
}

TEST(WilsonInterval, Preconditions) {
  EXPECT_THROW(wilson_interval(0, 0, 0.95), std::invalid_argument);
  EXPECT_THROW(wilson_interval(11, 10, 0.95), std::invalid_argument);
  EXPECT_THROW(wilson_interval(1, 10, 1.0), std::invalid_argument);
  EXPECT_THROW(wilson_interval(1, 10, 0.0), std::invalid_argument);
}

TEST(NormalQuantile, BuiltInLevels) {
  EXPECT_EQ(normal_quantile(0.95), kZ95);
  EXPECT_NEAR(normal_quantile(0.90), 1.6448536269514722, 1e-15);
  EXPECT_NEAR(normal_quantile(0.99), 2.5758293035489004, 1e-15);
}

TEST(NormalQuantile, AgreesWithBoostAcrossRange) {
  const boost::math::normal_distribution<double> normal;
  for (double p : {1e-12, 1e-8, 1e-4, 0.001, 0.01, 0.02425, 0.05, 0.2, 0.4999, 0.5, 0.63, 0.9,
                   0.97575, 0.99, 0.9999, 1 - 1e-9}) {
    EXPECT_NEAR(inverse_normal_cdf(p), boost::math::quantile(normal, p), 1e-8) << p;
  }
  for (double c : {0.5, 0.8, 0.9, 0.95, 0.975, 0.99, 0.999}) {
    EXPECT_NEAR(normal_quantile(c), boost::math::quantile(normal, 1 - (1 - c) / 2), 1e-8) << c;
  }
}

TEST(EstimateCell, Invariants) {
  for (std::uint64_t s : {0u, 3u, 50u, 100u}) {
    const EstimateCell cell = make_estimate_cell(s, 100, 0.99);
    EXPECT_LE(0.0, cell.ci_low);
    EXPECT_LE(cell.ci_low, cell.point);
    EXPECT_LE(cell.point, cell.ci_high);
    EXPECT_LE(cell.ci_high, 1.0);
  }
}

}  // namespace
}  // namespace icsym
