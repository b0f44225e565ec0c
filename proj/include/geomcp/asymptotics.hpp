#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "geomcp/errors.hpp"
#include "geomcp/rng.hpp"
#include "geomcp/stats.hpp"

namespace geomcp {

// Limit moments of X = sqrt(sum Y_i^2), Y_i ~ N(mu_i, sigma_i^2):
//   mean = sqrt(sum(mu_i^2 + sigma_i^2))
//   var  = [2 sum(mu_i sigma_i)^2 + sum sigma_i^4
//           + 2 rho sqrt(2 sum_i sum_j mu_i^2 sigma_i^2 sigma_j^4)]
//          / [2 sum(mu_i^2 + sigma_i^2)]
// rho couples the two limiting Gaussian components and is supplied by the
// caller, never estimated.
struct NormLimitMoments {
  double mean = 0.0;
  double sd = 0.0;
};

inline NormLimitMoments norm_limit_moments(std::span<const double> mu,
                                          std::span<const double> sigma, double rho) {
  if (mu.size() != sigma.size() || mu.empty())
    throw InputError("mean and sd vectors must have equal positive length");
  if (!(rho >= -1.0 && rho <= 1.0)) throw ConfigError("correlation must lie in [-1, 1]");
  double sum_m2s2 = 0.0, sum_ms_sq = 0.0, sum_s4 = 0.0, sum_m2s2s2 = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (sigma[i] < 0.0) throw InputError("standard deviations must be nonnegative");
    const double m2 = mu[i] * mu[i];
    const double s2 = sigma[i] * sigma[i];
    sum_m2s2 += m2 + s2;
    sum_ms_sq += m2 * s2;
    sum_s4 += s2 * s2;
    sum_m2s2s2 += m2 * s2;
  }
  if (sum_m2s2 == 0.0) throw InputError("all-zero mean and sd vectors are degenerate");
  const double numerator =
      2.0 * sum_ms_sq + sum_s4 + 2.0 * rho * std::sqrt(2.0 * sum_m2s2s2 * sum_s4);
  return NormLimitMoments{std::sqrt(sum_m2s2), std::sqrt(numerator / (2.0 * sum_m2s2))};
}

struct NormalityStats {
  double sample_mean = 0.0;
  double sample_sd = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double ks_statistic = 0.0;
  double ks_p_value = 1.0;
};

namespace detail {

inline NormalityStats normality_of(std::vector<double> sample, bool self_standardize) {
  const SampleMoments m = sample_moments(sample);
  NormalityStats stats;
  stats.sample_mean = m.mean;
  stats.sample_sd = m.sd;
  stats.skewness = m.skewness;
  stats.excess_kurtosis = m.excess_kurtosis;
  if (self_standardize) {
    if (m.sd <= 0.0) throw InputError("cannot standardize a constant sample");
    for (auto& x : sample) x = (x - m.mean) / m.sd;
  }
  const KsResult ks = ks_test_standard_normal(std::move(sample));
  stats.ks_statistic = ks.statistic;
  stats.ks_p_value = ks.p_value;
  return stats;
}

}  // namespace detail

// Draw X = sqrt(sum Y_i^2) `reps` times and test the sample (standardized by
// its own mean and sd) against the standard normal.
inline NormalityStats monte_carlo_distance(std::span<const double> mu,
                                           std::span<const double> sigma, std::size_t reps,
                                           Rng& rng) {
  if (mu.size() != sigma.size() || mu.empty())
    throw InputError("mean and sd vectors must have equal positive length");
  if (reps < 1000) throw InputError("monte carlo validation needs at least 1000 replications");
  std::vector<double> sample(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    double sum = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const double y = mu[i] + sigma[i] * rng.normal();
      sum += y * y;
    }
    sample[r] = std::sqrt(sum);
  }
  return detail::normality_of(std::move(sample), true);
}

// Draw X = sum Y_i^2 with Y_i ~ N(0, sigma_i^2), standardize by the exact
// moments (X - sum sigma_i^2) / sqrt(2 sum sigma_i^4), and test against the
// standard normal. The reported sample mean and sd are those of the
// standardized statistic.
inline NormalityStats monte_carlo_sum_of_squares(std::span<const double> sigma, std::size_t reps,
                                                 Rng& rng) {
  if (sigma.empty()) throw InputError("sd vector must be nonempty");
  if (reps < 1000) throw InputError("monte carlo validation needs at least 1000 replications");
  double center = 0.0, spread = 0.0;
  for (double s : sigma) {
    center += s * s;
    spread += s * s * s * s;
  }
  spread = std::sqrt(2.0 * spread);
  if (spread == 0.0) throw InputError("all-zero sd vector is degenerate");
  std::vector<double> sample(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    double sum = 0.0;
    for (double s : sigma) {
      const double y = s * rng.normal();
      sum += y * y;
    }
    sample[r] = (sum - center) / spread;
  }
  return detail::normality_of(std::move(sample), false);
}

}  // namespace geomcp
