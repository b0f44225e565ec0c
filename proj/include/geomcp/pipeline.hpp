#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geomcp/cost.hpp"
#include "geomcp/errors.hpp"
#include "geomcp/geometry.hpp"
#include "geomcp/matrix.hpp"
#include "geomcp/pelt.hpp"
#include "geomcp/scaling.hpp"

namespace geomcp {

// End-to-end detector settings. Both mapped series are searched under the
// same cost model and penalty. xi is the reconciliation threshold in time
// points: a distance changepoint within xi of an angle changepoint is the
// same change, located at the angle estimate.
struct DetectionConfig {
  CostModel model = CostModel::normal();
  Penalty penalty = Penalty::manual(0.0);  // callers usually set mbic_penalty(n)
  std::size_t minseglen = 2;
  std::size_t xi = 10;
  bool scale_first = false;  // MAD pre-scaling
};

enum class ChangepointSource { distance, angle, both };

struct AttributedChangepoint {
  std::size_t index = 0;
  ChangepointSource source = ChangepointSource::distance;
};

struct DetectionResult {
  std::vector<std::size_t> distance_cpts;
  std::vector<std::size_t> angle_cpts;
  std::vector<std::size_t> reconciled;
  std::vector<AttributedChangepoint> attributed;  // reconciled set with provenance
  MappedSeries distance_series;
  MappedSeries angle_series;
};

// Merge the two changepoint sets: a distance changepoint with an angle
// changepoint within xi is dropped (the angle location wins); the result is
// the sorted union of the angle set and the surviving distance set.
inline std::vector<std::size_t> reconcile(std::span<const std::size_t> distance_cpts,
                                          std::span<const std::size_t> angle_cpts,
                                          std::size_t xi) {
  std::vector<std::size_t> merged(angle_cpts.begin(), angle_cpts.end());
  for (std::size_t d : distance_cpts) {
    bool matched = false;
    for (std::size_t a : angle_cpts) {
      const std::size_t gap = d > a ? d - a : a - d;
      if (gap <= xi) {
        matched = true;
        break;
      }
    }
    if (!matched) merged.push_back(d);
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return merged;
}

namespace detail {

inline std::vector<AttributedChangepoint> attribute(std::span<const std::size_t> distance_cpts,
                                                    std::span<const std::size_t> angle_cpts,
                                                    std::size_t xi) {
  std::vector<AttributedChangepoint> out;
  for (std::size_t a : angle_cpts) {
    bool paired = false;
    for (std::size_t d : distance_cpts) {
      const std::size_t gap = d > a ? d - a : a - d;
      if (gap <= xi) {
        paired = true;
        break;
      }
    }
    out.push_back({a, paired ? ChangepointSource::both : ChangepointSource::angle});
  }
  for (std::size_t d : distance_cpts) {
    bool matched = false;
    for (std::size_t a : angle_cpts) {
      const std::size_t gap = d > a ? d - a : a - d;
      if (gap <= xi) {
        matched = true;
        break;
      }
    }
    if (!matched) out.push_back({d, ChangepointSource::distance});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.index < b.index; });
  return out;
}

}  // namespace detail

// The full procedure: (optionally MAD-scale,) translate onto the all-ones
// reference, map to distance and angle series, run the penalized search on
// each, reconcile. The two searches are independent of each other and of the
// input matrix once mapped.
inline DetectionResult geomcp_detect(const SeriesMatrix& m, const DetectionConfig& cfg) {
  if (m.rows() < 2 * cfg.minseglen)
    throw InputError("matrix has too few time points for the configured minimum segment length");

  const SeriesMatrix* input = &m;
  SeriesMatrix scaled;
  if (cfg.scale_first) {
    scaled = scale_mad(m).matrix;
    input = &scaled;
  }

  const TranslatedMatrix translated = translate(*input);

  DetectionResult result;
  result.distance_series = distance_map(translated);
  result.angle_series = angle_map(translated);

  result.distance_cpts =
      pelt(result.distance_series.values, cfg.model, cfg.penalty, cfg.minseglen).changepoints;
  result.angle_cpts =
      pelt(result.angle_series.values, cfg.model, cfg.penalty, cfg.minseglen).changepoints;

  result.reconciled = reconcile(result.distance_cpts, result.angle_cpts, cfg.xi);
  result.attributed = detail::attribute(result.distance_cpts, result.angle_cpts, cfg.xi);
  return result;
}

}  // namespace geomcp
