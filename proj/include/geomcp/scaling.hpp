#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "geomcp/matrix.hpp"
#include "geomcp/stats.hpp"

namespace geomcp {

// Normal-consistent MAD multiplier.
inline constexpr double kMadConsistency = 1.4826;

struct ScaleMadResult {
  SeriesMatrix matrix;
  std::vector<std::size_t> flat_columns;  // 0-based columns left unscaled (MAD = 0)
};

// Divide every column by 1.4826 * MAD(column). Columns with zero MAD carry
// no usable scale and are passed through, reported in flat_columns.
inline ScaleMadResult scale_mad(const SeriesMatrix& m) {
  const std::size_t n = m.rows();
  const std::size_t p = m.cols();
  std::vector<double> out(n * p);
  std::vector<std::size_t> flat;
  for (std::size_t j = 0; j < p; ++j) {
    const double mad = mad_of(m.column(j));
    if (mad == 0.0) {
      flat.push_back(j);
      for (std::size_t i = 0; i < n; ++i) out[i * p + j] = m(i, j);
      continue;
    }
    const double scale = kMadConsistency * mad;
    for (std::size_t i = 0; i < n; ++i) out[i * p + j] = m(i, j) / scale;
  }
  return ScaleMadResult{SeriesMatrix(n, p, std::move(out)), std::move(flat)};
}

}  // namespace geomcp
