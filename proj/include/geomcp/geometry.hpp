#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "geomcp/errors.hpp"
#include "geomcp/matrix.hpp"

namespace geomcp {

enum class MappingKind { distance, angle };

// Univariate series produced by one of the two mappings.
struct MappedSeries {
  std::vector<double> values;
  MappingKind kind = MappingKind::distance;
};

// Matrix after anchoring each column's minimum at the reference vector:
// the column minimum of `values` equals the matching entry of `reference`
// exactly.
struct TranslatedMatrix {
  SeriesMatrix values;
  std::vector<double> reference;
};

namespace detail {

// compensated (Kahan) accumulator; keeps long row sums stable for large p
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace detail

// Shift every column so its minimum lands on the reference entry:
//   y'_{i,j} = (y_{i,j} - min_i y_{i,j}) + y0_j.
// Evaluated in that order so the minimum entry maps to y0_j exactly.
inline TranslatedMatrix translate(const SeriesMatrix& m, std::span<const double> y0 = {}) {
  const std::size_t n = m.rows();
  const std::size_t p = m.cols();

  std::vector<double> reference;
  if (y0.empty()) {
    reference.assign(p, 1.0);
  } else {
    if (y0.size() != p) {
      throw ConfigError("reference vector has length " + std::to_string(y0.size()) +
                        " but the matrix has " + std::to_string(p) + " series");
    }
    for (double v : y0) {
      if (v == 0.0 || !std::isfinite(v))
        throw ConfigError("reference vector entries must be finite and nonzero");
    }
    reference.assign(y0.begin(), y0.end());
  }

  std::vector<double> col_min(p, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = m.row(i);
    for (std::size_t j = 0; j < p; ++j) col_min[j] = std::min(col_min[j], row[j]);
  }

  std::vector<double> out(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = m.row(i);
    for (std::size_t j = 0; j < p; ++j) out[i * p + j] = (row[j] - col_min[j]) + reference[j];
  }
  return TranslatedMatrix{SeriesMatrix(n, p, std::move(out)), std::move(reference)};
}

// d_i = ||y'_i - y0||_2. Independent of the reference choice, since the
// translation re-anchors the data on it.
inline MappedSeries distance_map(const TranslatedMatrix& t) {
  const std::size_t n = t.values.rows();
  const std::size_t p = t.values.cols();
  MappedSeries out;
  out.kind = MappingKind::distance;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = t.values.row(i);
    detail::CompensatedSum acc;
    for (std::size_t j = 0; j < p; ++j) {
      const double d = row[j] - t.reference[j];
      acc.add(d * d);
    }
    out.values[i] = std::sqrt(acc.value());
  }
  return out;
}

// a_i = arccos( <y'_i, y0> / (||y'_i|| ||y0||) ), the principal angle between
// the translated time vector and the reference. The cosine is clamped to
// [-1, 1] before arccos to absorb floating-point overshoot on near-collinear
// rows.
inline MappedSeries angle_map(const TranslatedMatrix& t) {
  const std::size_t n = t.values.rows();
  const std::size_t p = t.values.cols();
  detail::CompensatedSum ref_norm_acc;
  for (double v : t.reference) ref_norm_acc.add(v * v);
  const double ref_norm = std::sqrt(ref_norm_acc.value());

  MappedSeries out;
  out.kind = MappingKind::angle;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = t.values.row(i);
    detail::CompensatedSum dot, norm2;
    for (std::size_t j = 0; j < p; ++j) {
      dot.add(row[j] * t.reference[j]);
      norm2.add(row[j] * row[j]);
    }
    const double row_norm = std::sqrt(norm2.value());
    if (row_norm == 0.0) {
      throw InputError("angle mapping is undefined for a zero row (row " + std::to_string(i + 1) +
                       ")");
    }
    const double cosine = std::clamp(dot.value() / (row_norm * ref_norm), -1.0, 1.0);
    out.values[i] = std::acos(cosine);
  }
  return out;
}

}  // namespace geomcp
