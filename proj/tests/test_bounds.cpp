#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rggmst/bounds.hpp"
#include "rggmst/errors.hpp"

using namespace rggmst;

TEST_CASE("geometric moment against closed forms") {
  for (double p : {0.1, 0.5, 0.9}) {
    CHECK(std::abs(geometric_moment(1.0, p) - 1.0 / p) <= 1e-12 / p);
    const double two = (2.0 - p) / (p * p);
    CHECK(std::abs(geometric_moment(2.0, p) - two) <= 1e-10 * two);
  }
  CHECK(geometric_moment(1.0, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(geometric_moment(2.0, 0.5) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(geometric_moment(1.0, 1.0 - std::exp(-1.0)) ==
        doctest::Approx(1.5819767068693265).epsilon(1e-14));
  // Polylogarithm values p/q Li_{-alpha}(q), evaluated at 40 digits.
  CHECK(geometric_moment(0.5, 0.3) == doctest::Approx(1.6980510121622606).epsilon(1e-13));
  CHECK(geometric_moment(3.0, 0.2) == doctest::Approx(605.0).epsilon(1e-13));
  CHECK(geometric_moment(1.5, 0.01) == doctest::Approx(1326.0181951638127).epsilon(1e-12));
  // Slow series: closed by the tail expansion.
  CHECK(geometric_moment(2.5, 1e-4) == doctest::Approx(33231017208.559620).epsilon(1e-11));
  CHECK(geometric_moment(2.0, 1e-5) == doctest::Approx(19999900000.0).epsilon(1e-11));
  CHECK(geometric_moment(1.0, 2e-6) == doctest::Approx(5e5).epsilon(1e-11));
}

TEST_CASE("geometric moment errors") {
  CHECK_THROWS_AS(geometric_moment(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(geometric_moment(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(geometric_moment(1.0, -0.2), std::domain_error);
  CHECK_THROWS_AS(geometric_moment(1.0, 1e-7), std::domain_error);
}

TEST_CASE("geometric moment monotonicity") {
  for (double alpha = 1.0; alpha <= 4.0; alpha += 0.25) {
    double prev = 0.0;
    for (double inv_p = 2.05; inv_p < 200.0; inv_p *= 1.3) {
      const double m = geometric_moment(alpha, 1.0 / inv_p);
      CHECK(m > prev);
      prev = m;
      CHECK(geometric_moment(alpha + 0.25, 1.0 / inv_p) > m);
    }
  }
}

TEST_CASE("C1 and C2 values") {
  const auto h = BoundParams::homogeneous(1.0);
  CHECK(c1(0.25, h) == doctest::Approx(0.073495669963420828).epsilon(1e-14));
  CHECK(c2(1.0, h) == doctest::Approx(5.1639534137386528).epsilon(1e-14));
  CHECK(c2(1.4, h) == doctest::Approx(4.4627893042994524).epsilon(1e-14));
  CHECK(c2(1.1, h) == doctest::Approx(4.7907306496401293).epsilon(1e-14));
  CHECK(c1(1e-6, h) < 1e-6);
  for (double a : {0.01, 0.3, 1.0, 2.5}) {
    CHECK(c1(a, h) <= 0.5 * std::pow(a, -1.0) * std::exp(-8.0 * a * a));
  }
  CHECK(c2(1e3, h) / (2.0 * 1e3) == doctest::Approx(1.0).epsilon(1e-5));

  BoundParams in{0.5, 2.0, 0.5, 2.0, 1.5};
  CHECK(c1(0.3, in) == doctest::Approx(0.0047585305109305508).epsilon(1e-14));
  CHECK(c2(1.2, in) == doctest::Approx(13.171391106972519).epsilon(1e-13));
  in.delta_rule = DeltaRule::Coupling;
  CHECK(in.delta() == 0.5);
  CHECK(c2(1.2, in) == doctest::Approx(23.726499469117544).epsilon(1e-13));
  CHECK_THROWS_AS(BoundParams({1.2, 2.0, 1.0, 1.0, 1.0}).validate(), ParameterError);
}

TEST_CASE("continuity") {
  const auto h = BoundParams::homogeneous(1.0);
  for (double a : {0.3, 1.0, 1.7}) {
    const double g1 = std::abs(c1(a + 1e-2, h) - c1(a, h));
    const double g2 = std::abs(c1(a + 1e-4, h) - c1(a, h));
    CHECK(g2 < g1);
    const double k1 = std::abs(c2(a + 1e-2, h) - c2(a, h));
    const double k2 = std::abs(c2(a + 1e-4, h) - c2(a, h));
    CHECK(k2 < k1);
  }
}

TEST_CASE("optimised constants") {
  const double tol = 1e-8;
  const auto h = BoundParams::homogeneous(1.0);
  const auto b = optimize_betas(h, tol);
  CHECK(b.beta_low == doctest::Approx(0.07356325738502244).epsilon(1e-10));
  CHECK(b.argmax == doctest::Approx(0.242605624806).epsilon(1e-7));
  CHECK(b.beta_up == doctest::Approx(4.462555954764058).epsilon(1e-10));
  CHECK(b.argmin == doctest::Approx(1.39052025380).epsilon(1e-7));
  CHECK_FALSE(b.multimodal_low);
  CHECK_FALSE(b.multimodal_up);
  CHECK(c1(b.argmax + tol, h) <= b.beta_low);
  CHECK(c1(b.argmax - tol, h) <= b.beta_low);
  CHECK(c2(b.argmin + tol, h) >= b.beta_up);
  CHECK(c2(b.argmin - tol, h) >= b.beta_up);

  const auto b2 = optimize_betas(BoundParams::homogeneous(2.0), tol);
  CHECK(b2.beta_low == doctest::Approx(0.0216524635072).epsilon(1e-9));
  CHECK(b2.beta_up == doctest::Approx(13.8771641248).epsilon(1e-9));
  const auto bh = optimize_betas(BoundParams::homogeneous(0.5), tol);
  CHECK(bh.beta_low == doctest::Approx(0.161265813847).epsilon(1e-9));
  CHECK(bh.argmin == doctest::Approx(1.807672724).epsilon(1e-6));

  BoundParams scaled = h;
  scaled.xi_min = scaled.xi_max = 3.0;
  const auto bs = optimize_betas(scaled, tol);
  CHECK(bs.beta_low == doctest::Approx(3.0 * b.beta_low).epsilon(1e-12));
  CHECK(bs.beta_up == doctest::Approx(3.0 * b.beta_up).epsilon(1e-12));
  CHECK(bs.argmax == doctest::Approx(b.argmax).epsilon(1e-7));
  CHECK(bs.argmin == doctest::Approx(b.argmin).epsilon(1e-7));
  CHECK_THROWS_AS(optimize_betas(h, 0.0), ParameterError);
}

TEST_CASE("golden section") {
  const double x = golden_section_minimize([](double v) { return (v - 0.3) * (v - 0.3); }, 0.0, 1.0, 1e-10);
  CHECK(x == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("A_n window") {
  const auto h = BoundParams::homogeneous(1.0);
  const auto exact = a_n_sequence(1.0, std::log(1e6), 1.0, h);
  CHECK(exact.c1_gap == 0.0);
  CHECK(exact.c2_gap == 0.0);
  CHECK_FALSE(exact.in_window);
  const auto off = a_n_sequence(1.0, std::log(1e6), 1.1, h);
  CHECK(off.c2_gap == doctest::Approx(5.1639534137386528 - 4.7907306496401293).epsilon(1e-12));
  double width = 1e9;
  double gap = 1e9;
  for (double l10 : {100.0, 1e3, 1e4, 1e5, 1e6}) {
    const auto r = a_n_sequence(1.0, l10 * std::log(10.0), std::nullopt, h);
    CHECK(r.in_window);
    CHECK(r.window_hi - r.window_lo < width);
    CHECK(r.c2_gap < gap);
    width = r.window_hi - r.window_lo;
    gap = r.c2_gap;
  }
  CHECK_THROWS_AS(a_n_sequence(1.0, std::log(2.0), std::nullopt, h), ParameterError);
}

TEST_CASE("theorem thresholds") {
  const auto h = BoundParams::homogeneous(1.0);
  const auto t4 = theorem_thresholds(1e4, 0.25, h);
  CHECK(t4.lower_factor == doctest::Approx(-0.8).epsilon(1e-12));
  CHECK(t4.lower_vacuous);
  CHECK(t4.lower == 0.0);
  CHECK(t4.upper_factor == doctest::Approx(1.0 + std::pow(10.0, -4.0 / 17.0)).epsilon(1e-14));
  CHECK(t4.upper_factor == doctest::Approx(1.582).epsilon(1e-3));
  CHECK(t4.scale == doctest::Approx(100.0));
  const auto t12 = theorem_thresholds(1e12, 0.25, h);
  CHECK(t12.lower_factor == doctest::Approx(0.982).epsilon(1e-12));
  CHECK_FALSE(t12.lower_vacuous);
  CHECK(t12.lower == doctest::Approx(c1(0.25, h) * 1e6 * 0.982).epsilon(1e-12));
  CHECK(t12.mean_lower == doctest::Approx(c1(0.25, h) * (1.0 - 37.0 * 0.5 / 1e3)).epsilon(1e-12));
  CHECK_THROWS_AS(theorem_thresholds(1.0, 0.25, h), ParameterError);
}

TEST_CASE("bounds table") {
  const auto rows = bounds_table(BoundParams::homogeneous(1.0), 0.5, 2.0, 4);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].a == doctest::Approx(1.0));
  CHECK(rows[1].c2 == doctest::Approx(5.1639534137386528).epsilon(1e-14));
  CHECK_THROWS_AS(bounds_table(BoundParams::homogeneous(1.0), 1.0, 0.5, 4), ParameterError);
}
