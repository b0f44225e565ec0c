#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "geomcp/errors.hpp"

namespace geomcp {

// Matching between estimated and true changepoints. An estimate is correct
// iff it is within `tolerance` of some true changepoint and no other
// estimate is strictly closer to that true changepoint; closeness ties go to
// the smaller estimate, and each true changepoint is matched at most once
// (an estimate winning several goes to the nearer one, smaller index on
// ties).
struct ChangepointMatching {
  // per estimate: index into truth, or nullopt when the estimate is false
  std::vector<std::optional<std::size_t>> estimate_to_truth;
  std::size_t correct_count = 0;
};

inline ChangepointMatching match_changepoints(std::span<const std::size_t> truth,
                                              std::span<const std::size_t> estimates,
                                              std::size_t tolerance) {
  ChangepointMatching out;
  out.estimate_to_truth.assign(estimates.size(), std::nullopt);

  auto gap = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };

  // winner(t): the estimate closest to truth t (smaller estimate on ties)
  std::vector<std::size_t> winner(truth.size());
  for (std::size_t t = 0; t < truth.size(); ++t) {
    std::size_t best = 0;
    std::size_t best_gap = std::numeric_limits<std::size_t>::max();
    for (std::size_t e = 0; e < estimates.size(); ++e) {
      const std::size_t g = gap(estimates[e], truth[t]);
      if (g < best_gap) {
        best_gap = g;
        best = e;
      }
    }
    winner[t] = best;
  }

  for (std::size_t e = 0; e < estimates.size(); ++e) {
    std::size_t best_gap = std::numeric_limits<std::size_t>::max();
    std::optional<std::size_t> matched;
    for (std::size_t t = 0; t < truth.size(); ++t) {
      if (winner[t] != e) continue;
      const std::size_t g = gap(estimates[e], truth[t]);
      if (g > tolerance) continue;
      if (g < best_gap) {  // nearer truth wins; ties keep the smaller truth index
        best_gap = g;
        matched = t;
      }
    }
    if (matched) {
      out.estimate_to_truth[e] = matched;
      ++out.correct_count;
    }
  }
  return out;
}

struct EvalReport {
  double tdr = 0.0;
  double fdr = 0.0;
  std::size_t true_count = 0;
  std::size_t est_count = 0;
  std::size_t correct_count = 0;
  std::size_t false_count = 0;
  std::size_t tolerance = 10;
};

inline EvalReport tdr_fdr(std::span<const std::size_t> truth,
                          std::span<const std::size_t> estimates, std::size_t tolerance = 10) {
  const auto matching = match_changepoints(truth, estimates, tolerance);
  EvalReport report;
  report.tolerance = tolerance;
  report.true_count = truth.size();
  report.est_count = estimates.size();
  report.correct_count = matching.correct_count;
  report.false_count = estimates.size() - matching.correct_count;
  report.tdr = truth.empty() ? 0.0
                             : static_cast<double>(report.correct_count) /
                                   static_cast<double>(report.true_count);
  report.fdr = estimates.empty() ? 0.0
                                 : static_cast<double>(report.false_count) /
                                       static_cast<double>(report.est_count);
  return report;
}

// Null-data false positive rate: total detections divided by the number of
// replications.
inline double fpr(std::span<const std::size_t> detections_per_replication) {
  if (detections_per_replication.empty())
    throw InputError("false positive rate needs at least one replication");
  std::size_t total = 0;
  for (std::size_t c : detections_per_replication) total += c;
  return static_cast<double>(total) / static_cast<double>(detections_per_replication.size());
}

// Batch summary with two-standard-error half-widths over replications.
struct BatchSummary {
  double tdr_mean = 0.0;
  double tdr_half_width = 0.0;
  double fdr_mean = 0.0;
  double fdr_half_width = 0.0;
  std::size_t replications = 0;
};

inline BatchSummary summarize(std::span<const EvalReport> reports) {
  if (reports.empty()) throw InputError("cannot summarize an empty batch");
  BatchSummary s;
  s.replications = reports.size();
  const double r = static_cast<double>(reports.size());
  for (const auto& rep : reports) {
    s.tdr_mean += rep.tdr;
    s.fdr_mean += rep.fdr;
  }
  s.tdr_mean /= r;
  s.fdr_mean /= r;
  double vt = 0.0, vf = 0.0;
  for (const auto& rep : reports) {
    vt += (rep.tdr - s.tdr_mean) * (rep.tdr - s.tdr_mean);
    vf += (rep.fdr - s.fdr_mean) * (rep.fdr - s.fdr_mean);
  }
  if (reports.size() > 1) {
    vt /= r - 1.0;
    vf /= r - 1.0;
    s.tdr_half_width = 2.0 * std::sqrt(vt / r);
    s.fdr_half_width = 2.0 * std::sqrt(vf / r);
  }
  return s;
}

}  // namespace geomcp
