#pragma once

#include <cstdint>
#include <utility>

namespace icsym {

/// Two-sided standard normal quantile for a confidence level c in (0, 1),
/// i.e. the z with P(|Z| <= z) = c.
double normal_quantile(double confidence);

/// Inverse of the standard normal CDF, p in (0, 1).
double inverse_normal_cdf(double p);

struct Interval {
  double low = 0.0;
  double high = 1.0;

  bool contains(double x) const noexcept { return low <= x && x <= high; }
  bool overlaps(const Interval& other) const noexcept {
    return low <= other.high && other.low <= high;
  }
};

/// Wilson score interval for a binomial proportion, clamped to [0, 1].
/// Throws std::invalid_argument unless trials >= 1, successes <= trials and
/// confidence is in (0, 1).
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence);

/// Monte Carlo estimate of one probability.
struct EstimateCell {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;

  Interval interval() const noexcept { return {ci_low, ci_high}; }
};

EstimateCell make_estimate_cell(std::uint64_t successes, std::uint64_t trials, double confidence);

}  // namespace icsym
