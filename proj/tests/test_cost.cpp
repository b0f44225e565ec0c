#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "geomcp/cost.hpp"
#include "geomcp/rng.hpp"
#include "geomcp/stats.hpp"

using namespace geomcp;

namespace {

std::vector<double> random_series(std::size_t n, Rng& rng) {
  std::vector<double> xs(n);
  for (auto& x : xs) x = rng.normal();
  return xs;
}

// definition-level recomputation, independent of the prefix-sum path
double direct_normal_cost(const std::vector<double>& xs, std::size_t s, std::size_t t,
                          double floor = 1e-8) {
  const double l = static_cast<double>(t - s);
  double mean = 0.0;
  for (std::size_t i = s; i < t; ++i) mean += xs[i];
  mean /= l;
  double var = 0.0;
  for (std::size_t i = s; i < t; ++i) var += (xs[i] - mean) * (xs[i] - mean);
  var = std::max(var / l, floor);
  return l * (std::log(2.0 * 3.14159265358979323846) + std::log(var) + 1.0);
}

}  // namespace

TEST_CASE("prefix sums of a two-point series", "[cost]") {
  const std::vector<double> xs{1, 2};
  // internal arrays are exercised through cost queries: segment (0,2]
  CostContext ctx(xs, CostModel::normal());
  const double direct = direct_normal_cost(xs, 0, 2);
  CHECK(ctx.normal_meanvar_cost(0, 2) == Catch::Approx(direct).epsilon(1e-12));
}

TEST_CASE("default quantile count is ceil(4 ln n)", "[cost]") {
  CHECK(default_quantile_count(148) == 20);
  CHECK(default_quantile_count(3) == 5);  // capped at n
  std::vector<double> xs(static_cast<std::size_t>(148));
  Rng rng(1);
  for (auto& x : xs) x = rng.normal();
  CostContext ctx(xs, CostModel::empirical());
  CHECK(ctx.model().quantile_count == 20);
}

TEST_CASE("single quantile sits at the median", "[cost]") {
  const auto levels = quantile_levels(50, 1);
  REQUIRE(levels.size() == 1);
  CHECK(levels[0] == Catch::Approx(0.5).epsilon(1e-15));

  Rng rng(2);
  auto xs = random_series(31, rng);
  const auto qs = choose_quantiles(xs, 1);
  CHECK(qs.quantiles[0] == Catch::Approx(median_of(xs)).epsilon(1e-15));
  CHECK(qs.gamma == Catch::Approx(2.0 * std::log(2.0 * 31 - 1.0)).epsilon(1e-15));
}

TEST_CASE("quantile levels at n=100, K=18", "[cost]") {
  const auto levels = quantile_levels(100, 18);
  CHECK(levels[0] == Catch::Approx(0.0066979563).margin(1e-9));
  CHECK(levels[8] == Catch::Approx(0.4270071476).margin(1e-9));
  CHECK(std::is_sorted(levels.begin(), levels.end()));
}

TEST_CASE("top level approaches the upper tail for large K", "[cost]") {
  const std::size_t n = 400;
  const auto levels = quantile_levels(n, 64);
  const double expected = 1.0 - 1.0 / (2.0 * static_cast<double>(n));
  CHECK(levels.back() == Catch::Approx(expected).margin(2e-3));
  CHECK(levels.back() < 1.0);
}

TEST_CASE("normal segment cost golden value", "[cost]") {
  const std::vector<double> xs{0, 1, -1, 2};
  CostContext ctx(xs, CostModel::normal());
  CHECK(ctx.normal_meanvar_cost(0, 4) == Catch::Approx(12.24408247089422).epsilon(1e-10));
}

TEST_CASE("constant segments clamp to the variance floor and raise the flag", "[cost]") {
  const std::vector<double> xs{5, 5, 5};
  CostContext ctx(xs, CostModel::normal());
  CHECK_FALSE(ctx.saw_degenerate_segment());
  const double cost = ctx.normal_meanvar_cost(0, 3);
  CHECK(ctx.saw_degenerate_segment());
  const double expected = 3.0 * (std::log(2.0 * 3.14159265358979323846) + std::log(1e-8) + 1.0);
  CHECK(cost == Catch::Approx(expected).epsilon(1e-12));
}

TEST_CASE("two-point variance is the squared half difference", "[cost]") {
  Rng rng(3);
  for (int rep = 0; rep < 25; ++rep) {
    const double a = rng.normal(), b = rng.normal() + 2.0;
    CostContext ctx(std::vector<double>{a, b}, CostModel::normal());
    const double var = (a - b) * (a - b) / 4.0;
    const double expected = 2.0 * (std::log(2.0 * 3.14159265358979323846) + std::log(var) + 1.0);
    CHECK(ctx.normal_meanvar_cost(0, 2) == Catch::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("segments below every quantile cost nothing", "[cost]") {
  const std::vector<double> xs{1, 2, 3, 100, 200, 300};
  CostContext ctx(xs, CostModel::empirical(1));
  CHECK(ctx.empirical_cost(0, 3) == 0.0);
}

TEST_CASE("empirical cost of the balanced split", "[cost]") {
  const std::vector<double> xs{1, 1, 1, 1, 9, 9, 9, 9};
  CostContext ctx(xs, CostModel::empirical(1));
  const double gamma = 2.0 * std::log(15.0);
  CHECK(ctx.empirical_cost(2, 6) ==
        Catch::Approx(4.0 * gamma * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("empirical cost golden value", "[cost]") {
  const std::vector<double> xs{1, 2, 3, 4, 5, 6, 7, 8};
  CostContext ctx(xs, CostModel::empirical(5));
  CHECK(ctx.empirical_cost(0, 4) == Catch::Approx(5.439854661089).margin(1e-9));
}

TEST_CASE("empirical cost is nonnegative and zero only at pure splits", "[cost]") {
  Rng rng(4);
  const auto xs = random_series(80, rng);
  CostContext ctx(xs, CostModel::empirical());
  for (int rep = 0; rep < 200; ++rep) {
    const auto s = static_cast<std::size_t>(rng.uniform_int(0, 78));
    const auto t = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(s) + 1, 80));
    CHECK(ctx.empirical_cost(s, t) >= 0.0);
  }
}

TEST_CASE("normal cost is split subadditive", "[cost]") {
  Rng rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    const auto xs = random_series(40, rng);
    CostContext ctx(xs, CostModel::normal());
    const auto s = static_cast<std::size_t>(rng.uniform_int(0, 30));
    const auto u = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(s) + 2, 36));
    const auto t = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(u) + 2, 40));
    CHECK(ctx.normal_meanvar_cost(s, t) >=
          ctx.normal_meanvar_cost(s, u) + ctx.normal_meanvar_cost(u, t) - 1e-9);
  }
}

TEST_CASE("costs are invariant to within-segment permutation", "[cost]") {
  Rng rng(6);
  auto xs = random_series(30, rng);
  auto ys = xs;
  std::reverse(ys.begin() + 10, ys.begin() + 20);  // permute inside (10, 20]
  for (const auto model : {CostModel::normal(), CostModel::empirical()}) {
    CostContext cx(xs, model);
    CostContext cy(ys, model);
    CHECK(cx.segment_cost(10, 20) == Catch::Approx(cy.segment_cost(10, 20)).epsilon(1e-12));
  }
}

TEST_CASE("prefix-sum cost agrees with direct recomputation", "[cost]") {
  Rng rng(7);
  const auto xs = random_series(200, rng);
  CostContext ctx(xs, CostModel::normal());
  for (int rep = 0; rep < 100; ++rep) {
    const auto s = static_cast<std::size_t>(rng.uniform_int(0, 197));
    const auto t = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(s) + 2, 200));
    const double direct = direct_normal_cost(xs, s, t);
    CHECK(ctx.normal_meanvar_cost(s, t) == Catch::Approx(direct).epsilon(1e-8));
  }
}

TEST_CASE("scaling the series shifts the normal cost by 2 l ln lambda", "[cost]") {
  Rng rng(8);
  const auto xs = random_series(60, rng);
  for (const double lambda : {0.5, 2.0, 7.25}) {
    std::vector<double> scaled(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) scaled[i] = lambda * xs[i];
    CostContext base(xs, CostModel::normal());
    CostContext big(scaled, CostModel::normal());
    const std::size_t s = 5, t = 41;
    const double l = static_cast<double>(t - s);
    CHECK(big.normal_meanvar_cost(s, t) ==
          Catch::Approx(base.normal_meanvar_cost(s, t) + 2.0 * l * std::log(lambda)).epsilon(1e-9));
  }
}

TEST_CASE("cost context rejects bad input", "[cost]") {
  CHECK_THROWS_AS(CostContext(std::vector<double>{1.0}, CostModel::normal()), InputError);
  CHECK_THROWS_AS(
      CostContext(std::vector<double>{1.0, std::numeric_limits<double>::quiet_NaN()},
                  CostModel::normal()),
      InputError);
  const std::vector<double> xs{1, 2, 3};
  CostContext ctx(xs, CostModel::normal());
  CHECK_THROWS_AS(ctx.normal_meanvar_cost(1, 2), InputError);  // length-1 segment
  CHECK_THROWS_AS(ctx.normal_meanvar_cost(2, 2), InputError);
}
