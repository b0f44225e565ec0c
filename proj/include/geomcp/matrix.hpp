#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geomcp/errors.hpp"

namespace geomcp {

// Row-major n x p observation matrix: rows are time points, columns are
// series. Valid instances have n >= 2, p >= 1 and only finite entries.
class SeriesMatrix {
 public:
  SeriesMatrix() = default;

  SeriesMatrix(std::size_t n, std::size_t p, std::vector<double> values)
      : n_(n), p_(p), values_(std::move(values)) {
    if (n_ < 2) throw InputError("series matrix needs at least 2 time points");
    if (p_ < 1) throw InputError("series matrix needs at least 1 series");
    if (values_.size() != n_ * p_)
      throw InputError("series matrix storage does not match its dimensions");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        throw InputError("non-finite value at row " + std::to_string(i / p_ + 1) + ", column " +
                         std::to_string(i % p_ + 1));
      }
    }
  }

  static SeriesMatrix zeros(std::size_t n, std::size_t p) {
    return SeriesMatrix(n, p, std::vector<double>(n * p, 0.0));
  }

  std::size_t rows() const { return n_; }
  std::size_t cols() const { return p_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * p_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * p_ + j]; }

  std::span<const double> row(std::size_t i) const { return {values_.data() + i * p_, p_}; }
  std::span<double> row(std::size_t i) { return {values_.data() + i * p_, p_}; }

  const std::vector<double>& values() const { return values_; }

  std::vector<double> column(std::size_t j) const {
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = values_[i * p_ + j];
    return out;
  }

  bool operator==(const SeriesMatrix& other) const {
    return n_ == other.n_ && p_ == other.p_ && values_ == other.values_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t p_ = 0;
  std::vector<double> values_;
};

}  // namespace geomcp
