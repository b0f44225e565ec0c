#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "geomcp/cost.hpp"
#include "geomcp/errors.hpp"

namespace geomcp {

enum class PenaltyScheme { manual, mbic };

// Per-changepoint penalty. The mbic scheme additionally folds ln(segment
// length) into every segment's cost during the search.
struct Penalty {
  PenaltyScheme scheme = PenaltyScheme::manual;
  double beta = 0.0;
  bool per_segment_log_term = false;

  static Penalty manual(double beta) {
    if (beta < 0.0 || !std::isfinite(beta)) throw ConfigError("penalty must be finite and >= 0");
    return Penalty{PenaltyScheme::manual, beta, false};
  }
};

inline Penalty mbic_penalty(std::size_t n, std::size_t q_params = 2) {
  if (n < 4) throw InputError("mbic penalty needs n >= 4");
  return Penalty{PenaltyScheme::mbic,
                 static_cast<double>(q_params + 2) * std::log(static_cast<double>(n)), true};
}

// Ordered changepoints tau_1 < ... < tau_m, where tau_k is the last index of
// segment k (1-based); segments are (tau_{k-1}, tau_k] with tau_0 = 0,
// tau_{m+1} = n.
struct Segmentation {
  std::vector<std::size_t> changepoints;
  double total_cost = 0.0;        // penalized objective, incl. mbic log terms
  double unpenalized_cost = 0.0;  // sum of raw segment costs
};

struct PeltOptions {
  bool enable_pruning = true;
};

namespace detail {

inline double penalized_segment_cost(const CostContext& ctx, std::size_t s, std::size_t t,
                                     const Penalty& penalty) {
  double c = ctx.segment_cost(s, t);
  if (penalty.per_segment_log_term) c += std::log(static_cast<double>(t - s));
  return c;
}

inline void check_search_input(std::span<const double> series, const CostModel& model,
                               std::size_t minseglen) {
  if (minseglen < 1) throw ConfigError("minimum segment length must be >= 1");
  if (model.kind == CostKind::normal_meanvar && minseglen < 2)
    throw ConfigError("normal mean/variance cost needs minimum segment length >= 2");
  if (series.size() < 2 * minseglen)
    throw InputError("series of length " + std::to_string(series.size()) +
                     " is too short for minimum segment length " + std::to_string(minseglen));
}

inline Segmentation finish_segmentation(const CostContext& ctx, const Penalty& penalty,
                                        std::vector<std::size_t> cpts) {
  Segmentation out;
  out.changepoints = std::move(cpts);
  std::size_t prev = 0;
  double raw = 0.0, pen = 0.0;
  auto close = [&](std::size_t t) {
    raw += ctx.segment_cost(prev, t);
    pen += penalized_segment_cost(ctx, prev, t, penalty);
    prev = t;
  };
  for (std::size_t tau : out.changepoints) close(tau);
  close(ctx.size());
  out.unpenalized_cost = raw;
  out.total_cost = pen + penalty.beta * static_cast<double>(out.changepoints.size());
  return out;
}

}  // namespace detail

// Exact penalized search: minimizes sum_k C(segment_k) + m * beta over all
// segmentations whose segments have length >= minseglen, by the pruned
// dynamic program F(t) = min_s F(s) + C(y_{s+1..t}) + beta.
//
// The pruning constant is 0 for plain costs (both built-in costs are split
// subadditive). The mbic log-length term is not subadditive - splitting a
// segment of length l can raise the sum of log terms by up to ln(l/4) - so
// in that case candidates are pruned against F(t) - ln(n/4), which keeps the
// search exact.
inline Segmentation pelt(std::span<const double> series, const CostModel& model,
                         const Penalty& penalty, std::size_t minseglen = 2,
                         const PeltOptions& options = {}) {
  detail::check_search_input(series, model, minseglen);
  const CostContext ctx(series, model);
  const std::size_t n = series.size();
  const double beta = penalty.beta;

  double prune_constant = 0.0;
  if (penalty.per_segment_log_term && n > 4)
    prune_constant = -std::log(static_cast<double>(n) / 4.0);

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> opt(n + 1, inf);
  std::vector<std::size_t> prev(n + 1, 0);
  opt[0] = -beta;

  std::vector<std::size_t> candidates{0};
  std::vector<std::size_t> kept;
  kept.reserve(16);

  for (std::size_t t = minseglen; t <= n; ++t) {
    double best = inf;
    std::size_t best_s = 0;
    for (std::size_t s : candidates) {
      if (t - s < minseglen) continue;
      const double total = opt[s] + detail::penalized_segment_cost(ctx, s, t, penalty) + beta;
      if (total < best) {
        best = total;
        best_s = s;
      }
    }
    opt[t] = best;
    prev[t] = best_s;

    if (options.enable_pruning) {
      kept.clear();
      for (std::size_t s : candidates) {
        if (t - s < minseglen) {
          kept.push_back(s);  // not yet comparable at t; keep
          continue;
        }
        const double total = opt[s] + detail::penalized_segment_cost(ctx, s, t, penalty);
        if (total + prune_constant <= opt[t]) kept.push_back(s);
      }
      candidates.swap(kept);
    }
    if (t + minseglen <= n && t >= minseglen) candidates.push_back(t);
  }

  std::vector<std::size_t> cpts;
  for (std::size_t t = n; prev[t] > 0; t = prev[t]) cpts.push_back(prev[t]);
  std::reverse(cpts.begin(), cpts.end());
  return detail::finish_segmentation(ctx, penalty, std::move(cpts));
}

// Minimum unpenalized cost for each feasible changepoint count, by
// exhaustive enumeration. Entry m holds the cheapest segmentation with
// exactly m changepoints (cost ties broken toward the lexicographically
// smallest sequence). Shared oracle for the penalized search and the
// penalty-path hull.
struct CountOptimum {
  std::size_t count = 0;
  double cost = 0.0;  // unpenalized (plus mbic log terms when requested)
  std::vector<std::size_t> changepoints;
};

inline std::vector<CountOptimum> brute_force_by_count(std::span<const double> series,
                                                      const CostModel& model,
                                                      std::size_t minseglen,
                                                      bool per_segment_log_term = false) {
  detail::check_search_input(series, model, minseglen);
  const std::size_t n = series.size();
  if (n > 40) throw InputError("exhaustive segmentation oracle refuses n > 40");
  const CostContext ctx(series, model);
  Penalty terms;
  terms.per_segment_log_term = per_segment_log_term;

  const std::size_t max_count = n / minseglen - 1;
  std::vector<CountOptimum> best(max_count + 1);
  for (std::size_t m = 0; m <= max_count; ++m) {
    best[m].count = m;
    best[m].cost = std::numeric_limits<double>::infinity();
  }

  std::vector<std::size_t> stack;
  // depth-first over the next changepoint; lexicographic order, so on exact
  // cost ties the first hit is already the smallest sequence
  auto rec = [&](auto&& self, std::size_t start, double cost) -> void {
    if (n - start >= minseglen) {
      const double total = cost + detail::penalized_segment_cost(ctx, start, n, terms);
      auto& slot = best[stack.size()];
      if (total < slot.cost) {
        slot.cost = total;
        slot.changepoints = stack;
      }
    }
    if (start + 2 * minseglen > n) return;
    for (std::size_t t = start + minseglen; t + minseglen <= n; ++t) {
      const double c = cost + detail::penalized_segment_cost(ctx, start, t, terms);
      stack.push_back(t);
      self(self, t, c);
      stack.pop_back();
    }
  };
  rec(rec, 0, 0.0);

  std::vector<CountOptimum> out;
  for (auto& entry : best) {
    if (std::isfinite(entry.cost)) out.push_back(std::move(entry));
  }
  return out;
}

// Exhaustive minimizer of the penalized objective; ties broken toward fewer
// changepoints, then the lexicographically smallest sequence.
inline Segmentation brute_force_segment(std::span<const double> series, const CostModel& model,
                                        const Penalty& penalty, std::size_t minseglen = 2) {
  const auto by_count = brute_force_by_count(series, model, minseglen,
                                             penalty.per_segment_log_term);
  const CountOptimum* winner = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& entry : by_count) {
    const double total = entry.cost + penalty.beta * static_cast<double>(entry.count);
    if (total < best) {  // counts ascend, so ties keep the fewer-changepoint entry
      best = total;
      winner = &entry;
    }
  }
  if (winner == nullptr) throw InternalError("exhaustive search found no admissible segmentation");
  const CostContext ctx(series, model);
  return detail::finish_segmentation(ctx, penalty, winner->changepoints);
}

}  // namespace geomcp
