#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <tuple>

#include "oracles.hpp"
#include "rggmst/errors.hpp"
#include "rggmst/rgg.hpp"
#include "rggmst/sampling.hpp"

using namespace rggmst;

namespace {

PointSet make_points(std::vector<Point> pts) {
  PointSet ps;
  ps.points = std::move(pts);
  return ps;
}

std::vector<std::tuple<std::uint32_t, std::uint32_t>> pairs_of(const Rgg& g) {
  std::vector<std::tuple<std::uint32_t, std::uint32_t>> out;
  for (const auto& e : g.edges()) out.emplace_back(e.i, e.j);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("radius rules") {
  CHECK_THROWS_AS(radius_for(1e4, {RadiusRule::Kind::Theorem, 1600.0}, 1.0, 1.0), ParameterError);
  const auto p = radius_for(1e6, {RadiusRule::Kind::Power, 1.0, 1.0 / 3.0}, 1.0, 1.0);
  CHECK(p.radius == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(p.l2_condition);
  CHECK_FALSE(p.condition_i);
  const auto big = radius_for(1e12, {RadiusRule::Kind::Theorem, 1700.0}, 1.0, 1.0);
  CHECK(big.theorem_constant_ok);
  CHECK(big.condition_i);
  CHECK_FALSE(radius_for(1e12, {RadiusRule::Kind::Theorem, 1500.0}, 1.0, 1.0).theorem_constant_ok);
  CHECK_THROWS_AS(radius_for(1, {RadiusRule::Kind::Constant, 0.5}, 1.0, 1.0), ParameterError);
}

TEST_CASE("small hand-built graphs") {
  const auto w = WeightSpec::constant(1.0);
  CHECK(build_rgg(make_points({{0.1, 0.5}, {0.6, 0.5}}), 0.4, w).edges().empty());

  const auto g = build_rgg(make_points({{0.1, 0.5}, {0.2, 0.5}, {0.3, 0.5}}), 0.15, w);
  REQUIRE(g.edges().size() == 2);
  for (const auto& e : g.edges()) CHECK(e.weight == doctest::Approx(0.1).epsilon(1e-12));

  // Exactly at distance r is not an edge.
  CHECK(build_rgg(make_points({{0.25, 0.5}, {0.75, 0.5}}), 0.5, w).edges().empty());

  CHECK(is_connected(build_rgg(make_points({{0.5, 0.5}}), 0.1, w)));
  CHECK_FALSE(is_connected(build_rgg(make_points({{0.1, 0.1}, {0.9, 0.9}}), 0.1, w)));

  // Serpentine chain spaced r/2.
  const double r = 0.1;
  std::vector<Point> chain;
  for (int row = 0; row < 5; ++row) {
    for (int k = 0; k < 19; ++k) {
      const double x = 0.05 + 0.05 * (row % 2 == 0 ? k : 18 - k);
      chain.push_back({x, 0.05 + 0.05 * row});
    }
  }
  const auto sg = build_rgg(make_points(chain), r, w);
  CHECK(is_connected(sg));
  CHECK(component_count(sg) == 1);
}

TEST_CASE("grid construction equals all-pairs scan") {
  const auto table_w = WeightSpec::from_cell_factors(1.5, 2, {1.0, 2.0, 0.5, 1.5}, 0.5, 2.0);
  for (int t = 0; t < 60; ++t) {
    const std::uint64_t n = 1 + 8 * t;
    const double r = 0.02 + 0.015 * (t % 20);
    const auto& w = t % 2 ? table_w : WeightSpec::constant(1.0, 1.3);
    const auto ps = sample_binomial(n, DensitySpec::uniform(), 500 + t);
    const auto expect = oracle::all_pairs(ps.points, r, w);
    const auto g = build_rgg(ps, r, w);
    REQUIRE(g.edges().size() == expect.size());
    std::vector<std::tuple<std::uint32_t, std::uint32_t>> want;
    for (const auto& e : expect) want.emplace_back(e.i, e.j);
    std::sort(want.begin(), want.end());
    CHECK(pairs_of(g) == want);
    for (const auto& e : g.edges()) {
      const double ref = std::pow(distance(ps.points[e.i], ps.points[e.j]), w.alpha()) *
                         w.xi(ps.points[e.i], ps.points[e.j]);
      CHECK(std::abs(e.weight - ref) <= 1e-12 * ref);
      CHECK(w.xi(ps.points[e.i], ps.points[e.j]) == w.xi(ps.points[e.j], ps.points[e.i]));
    }
  }
}

TEST_CASE("edge sets grow with r") {
  const auto ps = sample_binomial(300, DensitySpec::uniform(), 42);
  const auto w = WeightSpec::constant(2.0);
  auto small = pairs_of(build_rgg(ps, 0.08, w));
  auto large = pairs_of(build_rgg(ps, 0.12, w));
  CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  CHECK(large.size() > small.size());
}

TEST_CASE("weight spec validation") {
  CHECK_THROWS_AS(WeightSpec::tabulated(1.0, 1, {1.0}, 2.0, 3.0), ConfigError);
  CHECK_THROWS_AS(WeightSpec::tabulated(1.0, 2, std::vector<double>(16, 1.0), 0.5, 0.9),
                  ConfigError);
  std::vector<double> asym(16, 1.0);
  asym[1] = 1.2;
  CHECK_THROWS_AS(WeightSpec::tabulated(1.0, 2, asym, 0.5, 2.0), ConfigError);
  const auto s = WeightSpec::constant(1.0, 1.5).scaled(2.0);
  CHECK(s.xi_min() == 3.0);
  CHECK(s.weight({0, 0}, {0.3, 0.4}) == doctest::Approx(1.5));
}
