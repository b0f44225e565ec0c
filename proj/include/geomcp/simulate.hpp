#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geomcp/errors.hpp"
#include "geomcp/matrix.hpp"
#include "geomcp/rng.hpp"

namespace geomcp {

enum class ChangeKind { mean, variance, mean_and_variance };
enum class CovarianceKind { independent, block_diagonal, random_rotation };

// Simulation scenario. theta scales the total mean change (sqrt(p) * theta
// across changing series), phi the total variance ratio (phi^sqrt(p)), kappa
// is the probability that an individual series changes at a changepoint.
struct ScenarioSpec {
  std::size_t n = 200;
  std::size_t p = 100;
  double theta = 1.2;
  double phi = 1.0;
  double kappa = 1.0;
  ChangeKind change_kind = ChangeKind::mean;
  CovarianceKind covariance = CovarianceKind::independent;
  std::optional<std::size_t> m_override;
  std::size_t min_gap = 30;
  std::uint64_t seed = 1;

  std::size_t changepoint_count() const {
    if (m_override) return *m_override;
    return (n + 199) / 200;  // ceil(n / 200)
  }

  void validate() const {
    if (n < 2) throw InputError("scenario needs n >= 2");
    if (p < 1) throw InputError("scenario needs p >= 1");
    if (!(phi > 0.0)) throw InputError("phi must be positive");
    if (!(kappa > 0.0) || kappa > 1.0) throw InputError("kappa must lie in (0, 1]");
    if (changepoint_count() >= 1 && n < 2 * min_gap)
      throw InputError("n too small for the minimum changepoint gap");
  }
};

// Realized ground truth: per-segment mean and standard-deviation vectors and
// the per-changepoint masks of affected series.
struct ChangePlan {
  std::vector<std::size_t> true_cpts;
  std::vector<std::vector<double>> segment_means;       // (m+1) x p
  std::vector<std::vector<double>> segment_sds;         // (m+1) x p
  std::vector<std::vector<unsigned char>> masks;        // m x p
  std::vector<std::string> warnings;
};

// m changepoints uniform over placements with all gaps (including both
// boundaries) >= min_gap. Rejection sampling, with a stratified fallback
// after too many rejections.
inline std::vector<std::size_t> place_changepoints(std::size_t n, std::size_t m,
                                                   std::size_t min_gap, Rng& rng) {
  if (m == 0) return {};
  if (min_gap < 1) throw InputError("minimum gap must be >= 1");
  if ((m + 1) * min_gap > n)
    throw InputError("cannot place " + std::to_string(m) + " changepoints >= " +
                     std::to_string(min_gap) + " apart in " + std::to_string(n) + " points");

  const auto lo = static_cast<std::int64_t>(min_gap);
  const auto hi = static_cast<std::int64_t>(n - min_gap);
  std::vector<std::size_t> draw(m);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (auto& v : draw) v = static_cast<std::size_t>(rng.uniform_int(lo, hi));
    std::sort(draw.begin(), draw.end());
    bool ok = true;
    for (std::size_t k = 1; k < m && ok; ++k) ok = draw[k] - draw[k - 1] >= min_gap;
    if (ok) return draw;
  }

  // stratified fallback: sorted slack offsets added to the tight lattice
  const std::size_t extra = n - (m + 1) * min_gap;
  for (auto& v : draw) v = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(extra)));
  std::sort(draw.begin(), draw.end());
  for (std::size_t k = 0; k < m; ++k) draw[k] += (k + 1) * min_gap;
  return draw;
}

// Expand a scenario into per-segment parameter vectors. At each changepoint
// every series changes independently with probability kappa; the per-series
// sizes split the total change across the expected kappa*p changers, and the
// direction alternates (up, down, up, ...) across successive changepoints so
// long simulations stay bounded.
inline ChangePlan plan_changes(const ScenarioSpec& spec, std::vector<std::size_t> cpts, Rng& rng) {
  spec.validate();
  const std::size_t p = spec.p;
  const double pd = static_cast<double>(p);
  const std::size_t m = cpts.size();

  ChangePlan plan;
  plan.true_cpts = std::move(cpts);
  if (spec.kappa * pd < 1.0)
    plan.warnings.push_back("expected number of changing series kappa*p is below 1");

  const bool change_mean = spec.change_kind != ChangeKind::variance;
  const bool change_var = spec.change_kind != ChangeKind::mean;
  const double mean_shift = std::sqrt(pd) * spec.theta / (spec.kappa * pd);
  const double sd_ratio = std::pow(spec.phi, std::sqrt(pd) / (spec.kappa * pd));

  plan.segment_means.assign(m + 1, std::vector<double>(p, 0.0));
  plan.segment_sds.assign(m + 1, std::vector<double>(p, 1.0));
  plan.masks.assign(m, std::vector<unsigned char>(p, 0));

  for (std::size_t k = 1; k <= m; ++k) {
    const double direction = (k % 2 == 1) ? 1.0 : -1.0;
    plan.segment_means[k] = plan.segment_means[k - 1];
    plan.segment_sds[k] = plan.segment_sds[k - 1];
    for (std::size_t j = 0; j < p; ++j) {
      const bool hit = rng.uniform01() < spec.kappa;
      plan.masks[k - 1][j] = hit ? 1 : 0;
      if (!hit) continue;
      if (change_mean) plan.segment_means[k][j] += direction * mean_shift;
      if (change_var) plan.segment_sds[k][j] *= std::pow(sd_ratio, direction);
    }
  }
  return plan;
}

// Covariance structures for the between-series dependence scenarios.
inline Eigen::MatrixXd covariance_matrix(CovarianceKind kind, std::size_t p, Rng& rng) {
  if (p < 2) throw InputError("covariance construction needs p >= 2");
  const auto pi = static_cast<Eigen::Index>(p);
  switch (kind) {
    case CovarianceKind::independent:
      return Eigen::MatrixXd::Identity(pi, pi);
    case CovarianceKind::block_diagonal: {
      if (p % 2 != 0) throw InputError("block-diagonal covariance needs an even p");
      Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(pi, pi);
      for (Eigen::Index b = 0; b < pi; b += 2) {
        const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
        const double rho = sign * rng.uniform(0.3, 0.6);
        sigma(b, b + 1) = rho;
        sigma(b + 1, b) = rho;
      }
      return sigma;
    }
    case CovarianceKind::random_rotation: {
      Eigen::MatrixXd gauss(pi, pi);
      for (Eigen::Index i = 0; i < pi; ++i)
        for (Eigen::Index j = 0; j < pi; ++j) gauss(i, j) = rng.normal();
      const Eigen::MatrixXd q =
          Eigen::HouseholderQR<Eigen::MatrixXd>(gauss).householderQ();
      Eigen::VectorXd d(pi);
      for (Eigen::Index j = 0; j < pi; ++j)
        d(j) = 30.0 - 29.0 * static_cast<double>(j) / static_cast<double>(pi - 1);
      Eigen::MatrixXd sigma = q * d.asDiagonal() * q.transpose();
      return 0.5 * (sigma + sigma.transpose());
    }
  }
  throw InternalError("unknown covariance kind");
}

struct SimulatedData {
  SeriesMatrix matrix;
  ChangePlan plan;
};

// Sample the matrix for a given plan: row i in segment k is
// mu_k + sigma_k .* (L z) with L the Cholesky factor of the correlation
// structure (L = I in the independent case) and z standard normal.
inline SeriesMatrix generate_from_plan(std::size_t n, std::size_t p, const ChangePlan& plan,
                                       CovarianceKind covariance, Rng& rng) {
  if (plan.segment_means.size() != plan.true_cpts.size() + 1)
    throw InputError("change plan segment count does not match its changepoints");
  for (const auto& sds : plan.segment_sds)
    for (double s : sds)
      if (!(s > 0.0)) throw InputError("change plan standard deviations must be positive");

  Eigen::MatrixXd chol;
  const bool correlated = covariance != CovarianceKind::independent;
  if (correlated) {
    const Eigen::MatrixXd sigma = covariance_matrix(covariance, p, rng);
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
      throw InternalError("covariance matrix is not positive definite");
    chol = llt.matrixL();
  }

  std::vector<double> values(n * p);
  std::vector<double> z(correlated ? p : 0);
  std::size_t segment = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (segment < plan.true_cpts.size() && i >= plan.true_cpts[segment]) ++segment;
    const auto& mu = plan.segment_means[segment];
    const auto& sd = plan.segment_sds[segment];
    double* row = values.data() + i * p;
    if (!correlated) {
      for (std::size_t j = 0; j < p; ++j) row[j] = mu[j] + sd[j] * rng.normal();
    } else {
      for (std::size_t j = 0; j < p; ++j) z[j] = rng.normal();
      Eigen::Map<const Eigen::VectorXd> zv(z.data(), static_cast<Eigen::Index>(p));
      Eigen::VectorXd w = chol * zv;
      for (std::size_t j = 0; j < p; ++j) row[j] = mu[j] + sd[j] * w(static_cast<Eigen::Index>(j));
    }
  }
  return SeriesMatrix(n, p, std::move(values));
}

inline SimulatedData generate(const ScenarioSpec& spec, Rng& rng) {
  spec.validate();
  auto cpts = place_changepoints(spec.n, spec.changepoint_count(), spec.min_gap, rng);
  ChangePlan plan = plan_changes(spec, std::move(cpts), rng);
  SeriesMatrix matrix = generate_from_plan(spec.n, spec.p, plan, spec.covariance, rng);
  return SimulatedData{std::move(matrix), std::move(plan)};
}

inline SimulatedData generate(const ScenarioSpec& spec) {
  Rng rng(spec.seed);
  return generate(spec, rng);
}

}  // namespace geomcp
