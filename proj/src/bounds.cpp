#include "rggmst/bounds.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rggmst/errors.hpp"

namespace rggmst {

namespace {

constexpr double kTailRelTol = 1e-14;
constexpr long kDirectTerms = 2000;
constexpr double kSmallestP = 1e-6;

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  [[nodiscard]] double value() const { return sum + comp; }
};

double moment_series(double alpha, double rate) {
  const double p = -std::expm1(-rate);
  CompensatedSum acc;
  double term = 0.0;
  long k = 1;
  for (; k <= kDirectTerms; ++k) {
    const double kd = static_cast<double>(k);
    term = p * std::exp(alpha * std::log(kd) - rate * (kd - 1.0));
    acc.add(term);
    if (term == 0.0) return acc.value();
    // Term ratios ((k+1)/k)^alpha q decrease in k, so a geometric tail bounds the rest.
    const double ratio = std::exp(alpha * std::log1p(1.0 / kd) - rate);
    if (ratio < 1.0 && term * ratio / (1.0 - ratio) <= kTailRelTol * acc.value()) {
      return acc.value();
    }
  }
  // About log(1e14)/p terms are needed, more than the 1e7 cap once p < 1e-6.
  if (p < kSmallestP) {
    throw std::domain_error("geometric moment series would exceed 1e7 terms for p < 1e-6");
  }
  // Close the slowly decaying tail sum_{j > K} g(j), g(x) = p x^alpha q^(x-1), with
  // Euler-Maclaurin: integral - g/2 - g'/12 + g'''/720 at x = K.
  const double big_k = static_cast<double>(kDirectTerms);
  const double integral = p * std::exp(rate) * std::pow(rate, -(alpha + 1.0)) *
                          boost::math::tgamma(alpha + 1.0, rate * big_k);
  const double h1 = alpha / big_k - rate;
  const double h2 = -alpha / (big_k * big_k);
  const double h3 = 2.0 * alpha / (big_k * big_k * big_k);
  const double g1 = term * h1;
  const double g3 = term * (h3 + 3.0 * h1 * h2 + h1 * h1 * h1);
  acc.add(integral - 0.5 * term - g1 / 12.0 + g3 / 720.0);
  return acc.value();
}

}  // namespace

void BoundParams::validate() const {
  if (!(eps1 > 0.0 && eps1 <= 1.0 && eps2 >= 1.0)) {
    throw ParameterError("bound parameters need 0 < eps1 <= 1 <= eps2");
  }
  if (!(xi_min > 0.0 && xi_min <= xi_max)) {
    throw ParameterError("bound parameters need 0 < xi_min <= xi_max");
  }
  if (!(alpha > 0.0)) throw ParameterError("bound parameters need alpha > 0");
}

double BoundParams::delta() const noexcept {
  const bool small_alpha = alpha <= 1.0;
  if (delta_rule == DeltaRule::Stated) return small_alpha ? eps1 : eps2;
  return small_alpha ? eps2 : eps1;
}

double geometric_moment(double alpha, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("geometric_moment needs p in (0, 1)");
  if (!(alpha >= 0.0)) throw std::domain_error("geometric_moment needs alpha >= 0");
  return moment_series(alpha, -std::log1p(-p));
}

double geometric_moment_from_rate(double alpha, double rate) {
  if (!(rate > 0.0)) throw std::domain_error("geometric moment rate must be positive");
  return moment_series(alpha, rate);
}

double c1(double a, const BoundParams& params) {
  const double a2 = a * a;
  return 0.5 * params.xi_min * std::pow(a, params.alpha - 2.0) * -std::expm1(-params.eps1 * a2) *
         std::exp(-8.0 * params.eps2 * a2);
}

double c2(double a, const BoundParams& params) {
  const double a2 = a * a;
  const double moment = geometric_moment_from_rate(params.alpha, params.delta() * a2);
  return params.xi_max * std::pow(2.0 * a, params.alpha) * (1.0 + moment / a2);
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

BetaOptimum optimize_betas(const BoundParams& params, double tol) {
  params.validate();
  if (!(tol > 0.0)) throw ParameterError("optimize_betas needs tol > 0");

  constexpr double kLow = 1e-3;
  constexpr std::size_t kGrid = 10'000;

  BetaOptimum out;
  double a_max = 1.0;
  while (a_max < 1e6 && !(c1(a_max, params) < 1e-30 && c2(1.01 * a_max, params) > c2(a_max, params))) {
    a_max *= 2.0;
  }
  out.a_max = a_max;

  // C2 is only evaluated where its series is admissible (p >= 1e-6).
  const double a_c2_min = std::sqrt(-std::log1p(-kSmallestP) / params.delta());

  std::vector<double> grid(kGrid);
  std::vector<double> v1(kGrid);
  std::vector<double> v2(kGrid);
  const double ratio = std::log(a_max / kLow) / static_cast<double>(kGrid - 1);
  for (std::size_t i = 0; i < kGrid; ++i) {
    grid[i] = kLow * std::exp(ratio * static_cast<double>(i));
    v1[i] = c1(grid[i], params);
    v2[i] = grid[i] >= a_c2_min ? c2(grid[i], params) : std::numeric_limits<double>::infinity();
  }

  std::size_t i1 = 0;
  std::size_t i2 = 0;
  std::size_t peaks = 0;
  std::size_t troughs = 0;
  for (std::size_t i = 0; i < kGrid; ++i) {
    if (v1[i] > v1[i1]) i1 = i;
    if (v2[i] < v2[i2]) i2 = i;
    if (i > 0 && i + 1 < kGrid) {
      if (v1[i] > v1[i - 1] && v1[i] >= v1[i + 1]) ++peaks;
      if (v2[i] < v2[i - 1] && v2[i] <= v2[i + 1]) ++troughs;
    }
  }
  out.multimodal_low = peaks > 1;
  out.multimodal_up = troughs > 1;

  // Refine to a quarter of tol so that argmax +- tol stays on the far side of the optimum.
  auto refine = [&](std::size_t i, const std::function<double(double)>& f) {
    const double lo = grid[i > 0 ? i - 1 : 0];
    const double hi = grid[i + 1 < kGrid ? i + 1 : kGrid - 1];
    return golden_section_minimize(f, lo, hi, tol / 4.0);
  };
  out.argmax = refine(i1, [&](double a) { return -c1(a, params); });
  out.beta_low = c1(out.argmax, params);
  if (out.beta_low < v1[i1]) {
    out.argmax = grid[i1];
    out.beta_low = v1[i1];
  }
  out.argmin = refine(i2, [&](double a) {
    return a >= a_c2_min ? c2(a, params) : std::numeric_limits<double>::infinity();
  });
  out.beta_up = c2(out.argmin, params);
  if (out.beta_up > v2[i2]) {
    out.argmin = grid[i2];
    out.beta_up = v2[i2];
  }
  return out;
}

AnReport a_n_sequence(double a, double log_n, std::optional<double> a_eff,
                      const BoundParams& params) {
  if (!(a > 0.0)) throw ParameterError("a_n_sequence needs A > 0");
  if (!(log_n >= std::log(3.0))) throw ParameterError("a_n_sequence needs n >= 3");
  AnReport out;
  out.a = a;
  out.log_n = log_n;
  const double quarter = std::pow(log_n, 0.25);
  out.window_lo = a + 1.0 / quarter;
  out.window_hi = a + 2.0 / quarter;
  out.a_n = a_eff.value_or(0.5 * (out.window_lo + out.window_hi));
  out.in_window = out.a_n >= out.window_lo && out.a_n < out.window_hi;
  out.c1_gap = std::abs(c1(out.a_n, params) - c1(a, params));
  out.c2_gap = std::abs(c2(out.a_n, params) - c2(a, params));
  return out;
}

Thresholds theorem_thresholds(double n, double a_eff, const BoundParams& params) {
  if (!(n >= 2.0)) throw ParameterError("theorem_thresholds needs n >= 2");
  if (!(a_eff > 0.0)) throw ParameterError("theorem_thresholds needs A_n > 0");
  Thresholds out;
  out.n = n;
  out.a_eff = a_eff;
  out.scale = std::pow(n, 1.0 - params.alpha / 2.0);
  const double n4 = std::pow(n, 0.25);
  const double n17 = std::pow(n, -1.0 / 17.0);
  const double lo1 = c1(a_eff, params);
  const double up2 = c2(a_eff, params);

  out.lower_factor = 1.0 - 36.0 * std::sqrt(a_eff) / n4;
  out.upper_factor = 1.0 + n17;
  out.lower_vacuous = out.lower_factor <= 0.0;
  out.lower = out.lower_vacuous ? 0.0 : lo1 * out.scale * out.lower_factor;
  out.upper = up2 * out.scale * out.upper_factor;

  out.mean_lower = std::max(0.0, lo1 * (1.0 - 37.0 * std::sqrt(a_eff) / n4));
  out.mean_upper = up2 * (1.0 + 2.0 * n17);
  return out;
}

std::vector<BoundsRow> bounds_table(const BoundParams& params, double a_lo, double a_hi,
                                    std::size_t points) {
  params.validate();
  if (!(a_lo > 0.0 && a_hi > a_lo) || points < 2) {
    throw ParameterError("bounds_table needs 0 < a_lo < a_hi and at least two points");
  }
  std::vector<BoundsRow> rows;
  rows.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double a = a_lo + (a_hi - a_lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    rows.push_back({a, c1(a, params), c2(a, params)});
  }
  return rows;
}

}  // namespace rggmst
