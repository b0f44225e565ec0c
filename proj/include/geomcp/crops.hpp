#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geomcp/errors.hpp"
#include "geomcp/pelt.hpp"

namespace geomcp {

// One optimal segmentation and the penalty interval on which it wins.
// Intervals are half-open [beta_lo, beta_hi); the first entry starts at
// beta_min and the last ends at beta_max.
struct CropsEntry {
  double beta_lo = 0.0;
  double beta_hi = 0.0;
  std::size_t count = 0;
  double unpenalized_cost = 0.0;
  Segmentation segmentation;
};

struct CropsResult {
  std::vector<CropsEntry> entries;  // sorted by decreasing changepoint count
  std::size_t pelt_calls = 0;
};

// Every segmentation that is pelt-optimal for some penalty in
// [beta_min, beta_max], found by recursive interval splitting on the lower
// convex hull of (m, Q(m)). Manual penalties only: the mbic per-segment
// log term is not linear in beta, which the hull argument requires.
inline CropsResult crops(std::span<const double> series, const CostModel& model, double beta_min,
                         double beta_max, std::size_t minseglen = 2,
                         PenaltyScheme scheme = PenaltyScheme::manual) {
  if (scheme != PenaltyScheme::manual)
    throw ConfigError(
        "the penalty-path search supports manual penalties only; the mbic per-segment term "
        "breaks the linear-in-penalty hull");
  if (!(beta_min >= 0.0) || !(beta_max >= beta_min) || !std::isfinite(beta_max))
    throw InputError("penalty range must satisfy 0 <= beta_min <= beta_max < infinity");

  CropsResult result;
  std::map<std::size_t, Segmentation> by_count;
  auto probe = [&](double beta) -> const Segmentation& {
    Segmentation seg = pelt(series, model, Penalty::manual(beta), minseglen);
    ++result.pelt_calls;
    return by_count.emplace(seg.changepoints.size(), std::move(seg)).first->second;
  };

  const Segmentation& low = probe(beta_min);
  const std::size_t m_low = low.changepoints.size();
  if (beta_max > beta_min) {
    const Segmentation& high = probe(beta_max);

    struct Interval {
      double beta_a, beta_b;
      std::size_t m_a, m_b;
      double q_a, q_b;
    };
    std::vector<Interval> work;
    if (m_low > high.changepoints.size() + 1) {
      work.push_back({beta_min, beta_max, m_low, high.changepoints.size(),
                      low.unpenalized_cost, high.unpenalized_cost});
    }
    while (!work.empty()) {
      const Interval iv = work.back();
      work.pop_back();
      const double beta_star =
          (iv.q_b - iv.q_a) / (static_cast<double>(iv.m_a) - static_cast<double>(iv.m_b));
      const Segmentation& mid = probe(beta_star);
      const std::size_t m_mid = mid.changepoints.size();
      if (m_mid == iv.m_a || m_mid == iv.m_b) continue;  // no vertex strictly inside
      if (m_mid + 1 < iv.m_a)
        work.push_back({iv.beta_a, beta_star, iv.m_a, m_mid, iv.q_a, mid.unpenalized_cost});
      if (iv.m_b + 1 < m_mid)
        work.push_back({beta_star, iv.beta_b, m_mid, iv.m_b, mid.unpenalized_cost, iv.q_b});
    }
  }

  // hull vertices, largest count first; interval boundaries are the exchange
  // penalties between consecutive vertices
  for (auto it = by_count.rbegin(); it != by_count.rend(); ++it) {
    CropsEntry entry;
    entry.count = it->first;
    entry.unpenalized_cost = it->second.unpenalized_cost;
    entry.segmentation = it->second;
    result.entries.push_back(std::move(entry));
  }
  double lo = beta_min;
  for (std::size_t i = 0; i < result.entries.size(); ++i) {
    auto& entry = result.entries[i];
    entry.beta_lo = lo;
    if (i + 1 < result.entries.size()) {
      const auto& next = result.entries[i + 1];
      entry.beta_hi = (next.unpenalized_cost - entry.unpenalized_cost) /
                      (static_cast<double>(entry.count) - static_cast<double>(next.count));
    } else {
      entry.beta_hi = beta_max;
    }
    lo = entry.beta_hi;
  }
  return result;
}

// Diagnostic row for the penalty-vs-count and cost-vs-count curves.
struct ElbowRow {
  std::size_t count = 0;
  double unpenalized_cost = 0.0;
  double beta_lo = 0.0;
  double beta_hi = 0.0;
  bool elbow = false;
};

// Rows sorted by ascending count with the maximum-curvature row annotated as
// a suggested elbow (smallest count on ties, and when the curve is flat or
// too short to bend).
inline std::vector<ElbowRow> elbow_table(const CropsResult& result) {
  if (result.entries.empty()) throw InputError("elbow table needs a nonempty penalty path");
  std::vector<ElbowRow> rows;
  for (auto it = result.entries.rbegin(); it != result.entries.rend(); ++it) {
    rows.push_back({it->count, it->unpenalized_cost, it->beta_lo, it->beta_hi, false});
  }
  std::size_t elbow_idx = 0;
  double best_curvature = 0.0;
  for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
    const double dm_prev = static_cast<double>(rows[k].count) - static_cast<double>(rows[k - 1].count);
    const double dm_next = static_cast<double>(rows[k + 1].count) - static_cast<double>(rows[k].count);
    const double slope_prev = (rows[k].unpenalized_cost - rows[k - 1].unpenalized_cost) / dm_prev;
    const double slope_next = (rows[k + 1].unpenalized_cost - rows[k].unpenalized_cost) / dm_next;
    const double curvature = slope_next - slope_prev;
    if (curvature > best_curvature) {
      best_curvature = curvature;
      elbow_idx = k;
    }
  }
  rows[elbow_idx].elbow = true;
  return rows;
}

inline std::string elbow_table_csv(const std::vector<ElbowRow>& rows) {
  std::string out = "m,Q,beta_lo,beta_hi,elbow_flag\n";
  char buf[160];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%d\n", row.count,
                  row.unpenalized_cost, row.beta_lo, row.beta_hi, row.elbow ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace geomcp
