#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geomcp/errors.hpp"
#include "geomcp/matrix.hpp"
#include "geomcp/simulate.hpp"

namespace geomcp {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      cells.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return cells;
}

inline bool parse_double(std::string_view cell, double& out) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && !cell.empty();
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

// Rectangular numeric CSV, rows = time points, columns = series. A single
// header row is auto-detected: any non-numeric token in row 1.
inline SeriesMatrix load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);

  std::vector<double> values;
  std::size_t p = 0;
  std::size_t n = 0;
  std::string line;
  std::size_t line_number = 0;
  bool first_content_row = true;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string_view trimmed = detail::trim(line);
    if (trimmed.empty()) continue;
    const auto cells = detail::split_csv(trimmed);

    if (first_content_row) {
      first_content_row = false;
      bool all_numeric = true;
      double tmp;
      for (auto cell : cells) {
        if (!detail::parse_double(cell, tmp)) {
          all_numeric = false;
          break;
        }
      }
      p = cells.size();
      if (!all_numeric) continue;  // header row
    }

    if (cells.size() != p) {
      throw InputError("row " + std::to_string(line_number) + " has " +
                       std::to_string(cells.size()) + " cells, expected " + std::to_string(p));
    }
    for (std::size_t j = 0; j < cells.size(); ++j) {
      double v;
      if (!detail::parse_double(cells[j], v)) {
        throw InputError("row " + std::to_string(line_number) + ", column " +
                         std::to_string(j + 1) + ": cannot parse '" + std::string(cells[j]) +
                         "' as a number");
      }
      values.push_back(v);
    }
    ++n;
  }
  if (n < 2) throw InputError(path + ": need at least 2 data rows, found " + std::to_string(n));
  return SeriesMatrix(n, p, std::move(values));  // also validates finiteness
}

// Written with 17 significant digits so that save -> load round-trips
// bitwise.
inline void save_csv(const SeriesMatrix& m, const std::string& path, bool header = false) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file: " + path);
  if (header) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? ",s" : "s") << (j + 1);
    out << '\n';
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto row = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << detail::format_double(row[j]);
    }
    out << '\n';
  }
  if (!out) throw InputError("failed while writing " + path);
}

// Ground-truth sidecar: one row per true changepoint with the (1-based) list
// of affected series, or "all".
inline void save_truth(const ChangePlan& plan, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file: " + path);
  out << "changepoint,affected_series\n";
  for (std::size_t k = 0; k < plan.true_cpts.size(); ++k) {
    out << plan.true_cpts[k] << ',';
    const auto& mask = plan.masks[k];
    const bool all = std::all_of(mask.begin(), mask.end(), [](unsigned char m) { return m != 0; });
    if (all) {
      out << "all";
    } else {
      bool first = true;
      for (std::size_t j = 0; j < mask.size(); ++j) {
        if (!mask[j]) continue;
        if (!first) out << '|';
        out << (j + 1);
        first = false;
      }
    }
    out << '\n';
  }
}

inline std::vector<std::size_t> load_truth_changepoints(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open truth file: " + path);
  std::vector<std::size_t> cpts;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const auto trimmed = detail::trim(line);
    if (trimmed.empty()) continue;
    if (first) {
      first = false;
      continue;  // header
    }
    const auto cells = detail::split_csv(trimmed);
    double v;
    if (cells.empty() || !detail::parse_double(cells[0], v) || v < 0.0)
      throw InputError(path + ": malformed changepoint row '" + std::string(trimmed) + "'");
    cpts.push_back(static_cast<std::size_t>(v));
  }
  std::sort(cpts.begin(), cpts.end());
  return cpts;
}

// Plain key-value scenario file: one `key = value` per line, '#' comments.
// Keys: n, p, theta, phi, kappa, change, covariance, m, min_gap, seed.
inline ScenarioSpec parse_scenario_config(std::istream& in) {
  ScenarioSpec spec;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view sv = detail::trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    const auto eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("scenario line " + std::to_string(line_number) + ": expected key = value");
    const std::string key{detail::trim(sv.substr(0, eq))};
    const std::string value{detail::trim(sv.substr(eq + 1))};
    auto as_count = [&](const std::string& v) -> std::size_t {
      std::size_t out{};
      const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
      if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("scenario line " + std::to_string(line_number) + ": bad count '" + v + "'");
      return out;
    };
    auto as_real = [&](const std::string& v) -> double {
      double out{};
      if (!detail::parse_double(v, out))
        throw ConfigError("scenario line " + std::to_string(line_number) + ": bad number '" + v + "'");
      return out;
    };
    if (key == "n") spec.n = as_count(value);
    else if (key == "p") spec.p = as_count(value);
    else if (key == "theta") spec.theta = as_real(value);
    else if (key == "phi") spec.phi = as_real(value);
    else if (key == "kappa") spec.kappa = as_real(value);
    else if (key == "m") spec.m_override = as_count(value);
    else if (key == "min_gap") spec.min_gap = as_count(value);
    else if (key == "seed") spec.seed = as_count(value);
    else if (key == "change") {
      if (value == "mean") spec.change_kind = ChangeKind::mean;
      else if (value == "variance") spec.change_kind = ChangeKind::variance;
      else if (value == "meanvar" || value == "mean_and_variance")
        spec.change_kind = ChangeKind::mean_and_variance;
      else throw ConfigError("unknown change kind '" + value + "'");
    } else if (key == "covariance") {
      if (value == "independent") spec.covariance = CovarianceKind::independent;
      else if (value == "block" || value == "block_diagonal")
        spec.covariance = CovarianceKind::block_diagonal;
      else if (value == "random") spec.covariance = CovarianceKind::random_rotation;
      else throw ConfigError("unknown covariance kind '" + value + "'");
    } else {
      throw ConfigError("unknown scenario key '" + key + "'");
    }
  }
  return spec;
}

inline ScenarioSpec load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file: " + path);
  return parse_scenario_config(in);
}

}  // namespace geomcp
