#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "geomcp/errors.hpp"
#include "geomcp/stats.hpp"

namespace geomcp {

enum class CostKind { normal_meanvar, empirical };

// Segment cost model for the univariate search. `quantile_count == 0` asks
// for the default ceil(4 ln n), resolved at precompute time.
struct CostModel {
  CostKind kind = CostKind::normal_meanvar;
  std::size_t quantile_count = 0;
  double variance_floor = 1e-8;

  static CostModel normal(double floor = 1e-8) {
    return CostModel{CostKind::normal_meanvar, 0, floor};
  }
  static CostModel empirical(std::size_t K = 0) { return CostModel{CostKind::empirical, K, 1e-8}; }
};

inline std::size_t default_quantile_count(std::size_t n) {
  const auto k = static_cast<std::size_t>(std::ceil(4.0 * std::log(static_cast<double>(n))));
  return std::clamp<std::size_t>(k, 1, n);
}

struct QuantileSet {
  std::vector<double> quantiles;  // nondecreasing
  double gamma = 0.0;             // uniform per-quantile weight, 2 ln(2n-1) / K
};

// Probability levels p_k = 1 / (1 + (2n-1) exp(-c (2k-1)/K)) with
// c = ln(2n-1), evaluated on the full series with linear-interpolation
// quantiles.
inline std::vector<double> quantile_levels(std::size_t n, std::size_t K) {
  if (K < 1) throw ConfigError("quantile count must be at least 1");
  const double c = std::log(2.0 * static_cast<double>(n) - 1.0);
  std::vector<double> levels(K);
  for (std::size_t k = 1; k <= K; ++k) {
    const double e = std::exp(-c * (2.0 * static_cast<double>(k) - 1.0) / static_cast<double>(K));
    levels[k - 1] = 1.0 / (1.0 + (2.0 * static_cast<double>(n) - 1.0) * e);
  }
  return levels;
}

inline QuantileSet choose_quantiles(std::span<const double> series, std::size_t K) {
  const std::size_t n = series.size();
  if (n < 2) throw InputError("need at least 2 points to choose quantiles");
  const auto levels = quantile_levels(n, K);
  std::vector<double> sorted(series.begin(), series.end());
  std::sort(sorted.begin(), sorted.end());
  QuantileSet out;
  out.quantiles.resize(K);
  for (std::size_t k = 0; k < K; ++k) out.quantiles[k] = quantile_sorted(sorted, levels[k]);
  out.gamma = 2.0 * std::log(2.0 * static_cast<double>(n) - 1.0) / static_cast<double>(K);
  return out;
}

// Immutable per-series state giving O(1) (normal) or O(K) (empirical)
// segment-cost queries. Segments are half-open index ranges (s, t] in
// 1-based terms, i.e. values[s..t) of the underlying array.
class CostContext {
 public:
  CostContext(std::span<const double> series, CostModel model) : model_(model), n_(series.size()) {
    if (n_ < 2) throw InputError("cost context needs a series of length >= 2");
    for (double v : series) {
      if (!std::isfinite(v)) throw InputError("cost context input contains non-finite values");
    }
    if (model_.variance_floor <= 0.0) throw ConfigError("variance floor must be positive");

    if (model_.kind == CostKind::normal_meanvar) {
      cum_.resize(n_ + 1, 0.0);
      cum_sq_.resize(n_ + 1, 0.0);
      for (std::size_t i = 0; i < n_; ++i) {
        cum_[i + 1] = cum_[i] + series[i];
        cum_sq_[i + 1] = cum_sq_[i] + series[i] * series[i];
      }
    } else {
      const std::size_t K =
          model_.quantile_count > 0 ? model_.quantile_count : default_quantile_count(n_);
      model_.quantile_count = K;
      quantiles_ = choose_quantiles(series, K);
      // half-count prefix per quantile: #{y < q} + 0.5 #{y == q}; halves are
      // exactly representable so the prefix sums stay exact
      half_counts_.assign(K, std::vector<double>(n_ + 1, 0.0));
      for (std::size_t k = 0; k < K; ++k) {
        const double q = quantiles_.quantiles[k];
        auto& pref = half_counts_[k];
        for (std::size_t i = 0; i < n_; ++i) {
          const double w = series[i] < q ? 1.0 : (series[i] == q ? 0.5 : 0.0);
          pref[i + 1] = pref[i] + w;
        }
      }
    }
  }

  std::size_t size() const { return n_; }
  const CostModel& model() const { return model_; }
  const QuantileSet& quantiles() const { return quantiles_; }

  std::size_t min_segment_length() const {
    return model_.kind == CostKind::normal_meanvar ? 2 : 1;
  }

  // true once any queried segment hit the variance floor
  bool saw_degenerate_segment() const { return degenerate_.load(std::memory_order_relaxed); }

  double segment_cost(std::size_t s, std::size_t t) const {
    return model_.kind == CostKind::normal_meanvar ? normal_meanvar_cost(s, t)
                                                   : empirical_cost(s, t);
  }

  // l (ln 2pi + ln sigma^2_ml + 1) with the ML variance clamped from below
  double normal_meanvar_cost(std::size_t s, std::size_t t) const {
    check_range(s, t);
    const std::size_t len = t - s;
    if (len < 2) throw InputError("normal mean/variance cost needs segments of length >= 2");
    const double l = static_cast<double>(len);
    const double sum = cum_[t] - cum_[s];
    const double sum_sq = cum_sq_[t] - cum_sq_[s];
    double var = (sum_sq - sum * sum / l) / l;
    if (var < model_.variance_floor) {
      var = model_.variance_floor;
      degenerate_.store(true, std::memory_order_relaxed);
    }
    constexpr double log_2pi = 1.8378770664093454836;
    return l * (log_2pi + std::log(var) + 1.0);
  }

  // -gamma sum_k l [F ln F + (1-F) ln(1-F)] with 0 ln 0 = 0
  double empirical_cost(std::size_t s, std::size_t t) const {
    check_range(s, t);
    const std::size_t len = t - s;
    const double l = static_cast<double>(len);
    double total = 0.0;
    for (std::size_t k = 0; k < half_counts_.size(); ++k) {
      const double a = half_counts_[k][t] - half_counts_[k][s];
      const double f = a / l;
      double lk = 0.0;
      if (f > 0.0 && f < 1.0) lk = l * (f * std::log(f) + (1.0 - f) * std::log(1.0 - f));
      total += lk;
    }
    return -quantiles_.gamma * total;
  }

 private:
  void check_range(std::size_t s, std::size_t t) const {
    if (s >= t || t > n_) throw InputError("segment indices out of range");
  }

  CostModel model_;
  std::size_t n_;
  std::vector<double> cum_;
  std::vector<double> cum_sq_;
  QuantileSet quantiles_;
  std::vector<std::vector<double>> half_counts_;
  mutable std::atomic<bool> degenerate_{false};
};

inline CostContext precompute(std::span<const double> series, CostModel model) {
  return CostContext(series, model);
}

}  // namespace geomcp
