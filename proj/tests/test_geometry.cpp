#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "geomcp/geometry.hpp"
#include "geomcp/rng.hpp"

using namespace geomcp;

namespace {

SeriesMatrix random_matrix(std::size_t n, std::size_t p, Rng& rng, double spread = 1.0) {
  std::vector<double> values(n * p);
  for (auto& v : values) v = spread * rng.normal();
  return SeriesMatrix(n, p, std::move(values));
}

}  // namespace

TEST_CASE("translate anchors each column minimum on the reference", "[geometry]") {
  SeriesMatrix m(2, 2, {3, -2, 5, 0});
  const auto t = translate(m);
  CHECK(t.values(0, 0) == 1.0);
  CHECK(t.values(1, 0) == 3.0);
  CHECK(t.values(0, 1) == 1.0);
  CHECK(t.values(1, 1) == 3.0);
}

TEST_CASE("translate maps constant columns to all-ones", "[geometry]") {
  SeriesMatrix m(4, 1, {7.5, 7.5, 7.5, 7.5});
  const auto t = translate(m);
  for (std::size_t i = 0; i < 4; ++i) CHECK(t.values(i, 0) == 1.0);
}

TEST_CASE("translate on a 3x2 matrix", "[geometry]") {
  SeriesMatrix m(3, 2, {0, 10, 2, 10, 1, 13});
  const auto t = translate(m);
  const std::vector<double> expected{1, 1, 3, 1, 2, 4};
  CHECK(t.values.values() == expected);
}

TEST_CASE("translate rejects bad reference vectors", "[geometry]") {
  SeriesMatrix m(2, 2, {1, 2, 3, 4});
  const std::vector<double> short_ref{1.0};
  CHECK_THROWS_AS(translate(m, short_ref), ConfigError);
  const std::vector<double> zero_ref{1.0, 0.0};
  CHECK_THROWS_AS(translate(m, zero_ref), ConfigError);
}

TEST_CASE("distance of the reference row is zero", "[geometry]") {
  SeriesMatrix m(2, 3, {1, 1, 1, 2, 3, 4});
  TranslatedMatrix t{m, {1, 1, 1}};
  const auto d = distance_map(t);
  CHECK(d.values[0] == 0.0);
  CHECK(d.kind == MappingKind::distance);
}

TEST_CASE("distance on simple rows", "[geometry]") {
  TranslatedMatrix t{SeriesMatrix(2, 4, {2, 2, 2, 2, 1, 1, 1, 1}), {1, 1, 1, 1}};
  CHECK(distance_map(t).values[0] == Catch::Approx(2.0).margin(1e-12));

  TranslatedMatrix t3{SeriesMatrix(2, 3, {1, 2, 4, 1, 1, 1}), {1, 1, 1}};
  CHECK(distance_map(t3).values[0] == Catch::Approx(3.1622776601683795).epsilon(1e-12));
}

TEST_CASE("angle of collinear rows is zero", "[geometry]") {
  TranslatedMatrix t{SeriesMatrix(2, 3, {5, 5, 5, 2, 2, 2}), {1, 1, 1}};
  const auto a = angle_map(t);
  CHECK(a.values[0] == Catch::Approx(0.0).margin(1e-9));
  CHECK(a.values[1] == Catch::Approx(0.0).margin(1e-9));
  CHECK(a.kind == MappingKind::angle);
}

TEST_CASE("angle on simple rows", "[geometry]") {
  TranslatedMatrix t2{SeriesMatrix(2, 2, {1, 3, 1, 1}), {1, 1}};
  CHECK(angle_map(t2).values[0] == Catch::Approx(0.46364760900080615).epsilon(1e-12));

  TranslatedMatrix t3{SeriesMatrix(2, 3, {1, 1, 2, 1, 1, 1}), {1, 1, 1}};
  CHECK(angle_map(t3).values[0] == Catch::Approx(0.33983690945412165).epsilon(1e-12));
}

TEST_CASE("angle rejects zero rows", "[geometry]") {
  TranslatedMatrix t{SeriesMatrix(2, 2, {0, 0, 1, 1}), {1, 1}};
  CHECK_THROWS_AS(angle_map(t), InputError);
}

TEST_CASE("column minima equal the reference exactly after translation", "[geometry]") {
  Rng rng(101);
  for (int rep = 0; rep < 20; ++rep) {
    const auto m = random_matrix(37, 11, rng, 10.0);
    const auto t = translate(m);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      double mn = t.values(0, j);
      for (std::size_t i = 1; i < m.rows(); ++i) mn = std::min(mn, t.values(i, j));
      CHECK(mn == 1.0);
    }
  }
}

TEST_CASE("per-column shifts leave the distance series unchanged", "[geometry]") {
  Rng rng(202);
  const auto m = random_matrix(50, 7, rng);
  const auto base = distance_map(translate(m));
  std::vector<double> shifted_values(m.values());
  std::vector<double> shifts(m.cols());
  for (auto& s : shifts) s = 100.0 * rng.normal();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) shifted_values[i * m.cols() + j] += shifts[j];
  const SeriesMatrix shifted(m.rows(), m.cols(), std::move(shifted_values));
  const auto moved = distance_map(translate(shifted));
  for (std::size_t i = 0; i < base.values.size(); ++i)
    CHECK(moved.values[i] == Catch::Approx(base.values[i]).margin(1e-9));
}

TEST_CASE("reference choice leaves the distance series unchanged", "[geometry]") {
  Rng rng(203);
  const auto m = random_matrix(40, 5, rng);
  const auto base = distance_map(translate(m));
  const std::vector<double> other_ref{2.0, -1.0, 0.5, 3.0, 7.0};
  const auto alt = distance_map(translate(m, other_ref));
  for (std::size_t i = 0; i < base.values.size(); ++i)
    CHECK(alt.values[i] == Catch::Approx(base.values[i]).margin(1e-9));
}

TEST_CASE("angle stays within [0, arccos(1/sqrt(p))]", "[geometry]") {
  Rng rng(303);
  for (std::size_t p : {2ul, 3ul, 10ul, 100ul}) {
    const auto m = random_matrix(60, p, rng, 5.0);
    const auto a = angle_map(translate(m));
    const double bound = std::acos(1.0 / std::sqrt(static_cast<double>(p)));
    for (double v : a.values) {
      CHECK(v >= 0.0);
      CHECK(v <= bound + 1e-12);
    }
  }
}

TEST_CASE("column permutations leave both mapped series unchanged", "[geometry]") {
  Rng rng(404);
  const std::size_t n = 30, p = 9;
  const auto m = random_matrix(n, p, rng);
  std::vector<std::size_t> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t j = p; j > 1; --j)
    std::swap(perm[j - 1], perm[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(j) - 1))]);
  std::vector<double> permuted(n * p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) permuted[i * p + j] = m(i, perm[j]);
  const SeriesMatrix mp(n, p, std::move(permuted));

  const auto base_t = translate(m);
  const auto perm_t = translate(mp);
  const auto d0 = distance_map(base_t), d1 = distance_map(perm_t);
  const auto a0 = angle_map(base_t), a1 = angle_map(perm_t);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(d1.values[i] == Catch::Approx(d0.values[i]).margin(1e-11));
    CHECK(a1.values[i] == Catch::Approx(a0.values[i]).margin(1e-11));
  }
}

TEST_CASE("row permutations permute the mapped series identically", "[geometry]") {
  Rng rng(505);
  const std::size_t n = 25, p = 4;
  const auto m = random_matrix(n, p, rng);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::vector<double> permuted(n * p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) permuted[i * p + j] = m(perm[i], j);
  const SeriesMatrix mp(n, p, std::move(permuted));

  const auto d0 = distance_map(translate(m));
  const auto d1 = distance_map(translate(mp));
  for (std::size_t i = 0; i < n; ++i) CHECK(d1.values[i] == d0.values[perm[i]]);
}
