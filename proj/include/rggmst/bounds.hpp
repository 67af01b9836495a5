#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace rggmst {

/// Which exponent-dependent rate enters p = 1 - exp(-delta A^2).
///  - Stated: delta = eps1 for alpha <= 1, eps2 for alpha > 1 (the rule the
///    constant C2 is stated with; default).
///  - Coupling: delta = eps2 for alpha <= 1, eps1 for alpha > 1 (the rule that
///    matches the direction of the coupling used for the gap sum).
/// The two coincide when eps1 = eps2 = 1.
enum class DeltaRule { Stated, Coupling };

struct BoundParams {
  double eps1 = 1.0;
  double eps2 = 1.0;
  double xi_min = 1.0;
  double xi_max = 1.0;
  double alpha = 1.0;
  DeltaRule delta_rule = DeltaRule::Stated;

  static BoundParams homogeneous(double alpha) { return {1.0, 1.0, 1.0, 1.0, alpha}; }

  /// Throws ParameterError unless 0 < eps1 <= 1 <= eps2, 0 < xi_min <= xi_max, alpha > 0.
  void validate() const;
  [[nodiscard]] double delta() const noexcept;
};

/// E[T^alpha] for T geometric on {1, 2, ...} with success probability p.
/// Throws std::domain_error for p outside (0, 1).
double geometric_moment(double alpha, double p);

/// Same moment parametrised by -log q = rate, which keeps full precision for
/// p = 1 - exp(-rate) near both 0 and 1. rate must be positive.
double geometric_moment_from_rate(double alpha, double rate);

/// C1(A) = xi_min/2 A^(alpha-2) (1 - exp(-eps1 A^2)) exp(-8 eps2 A^2).
double c1(double a, const BoundParams& params);

/// C2(A) = xi_max (2A)^alpha (1 + E[T^alpha] / A^2), p = 1 - exp(-delta A^2).
double c2(double a, const BoundParams& params);

/// Golden-section search for a minimum of a unimodal f on [lo, hi]; stops
/// once the bracket is narrower than tol and returns its best point.
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol);

struct BetaOptimum {
  double beta_low = 0.0;  // sup_A C1(A)
  double argmax = 0.0;
  double beta_up = 0.0;  // inf_A C2(A)
  double argmin = 0.0;
  double a_max = 0.0;  // upper end of the scanned range
  bool multimodal_low = false;
  bool multimodal_up = false;
};

/// Geometric grid scan (10^4 points) followed by golden-section refinement.
BetaOptimum optimize_betas(const BoundParams& params, double tol);

struct AnReport {
  double a = 0.0;
  double log_n = 0.0;
  double window_lo = 0.0;  // A + 1/(log n)^(1/4)
  double window_hi = 0.0;  // A + 2/(log n)^(1/4)
  double a_n = 0.0;        // realised A_n (the tiling's A_eff, or the window midpoint)
  bool in_window = false;
  double c1_gap = 0.0;  // |C1(A_n) - C1(A)|
  double c2_gap = 0.0;  // |C2(A_n) - C2(A)|
};

/// Takes log n rather than n so the window can be followed to n far beyond
/// double range.
AnReport a_n_sequence(double a, double log_n, std::optional<double> a_eff,
                      const BoundParams& params);

struct Thresholds {
  double n = 0.0;
  double a_eff = 0.0;
  double scale = 0.0;         // n^(1 - alpha/2)
  double lower_factor = 0.0;  // 1 - 36 sqrt(A)/n^(1/4)
  double upper_factor = 0.0;  // 1 + n^(-1/17)
  double lower = 0.0;         // C1 scale lower_factor, or 0 when vacuous
  double upper = 0.0;         // C2 scale upper_factor
  bool lower_vacuous = false;
  /// Bounds on E[MST_n / n^(1 - alpha/2)]: C1 (1 - 37 sqrt(A)/n^(1/4)) and
  /// C2 (1 + 2 n^(-1/17)); the lower one is clamped to 0 when vacuous.
  double mean_lower = 0.0;
  double mean_upper = 0.0;
};

Thresholds theorem_thresholds(double n, double a_eff, const BoundParams& params);

struct BoundsRow {
  double a;
  double c1;
  double c2;
};

std::vector<BoundsRow> bounds_table(const BoundParams& params, double a_lo, double a_hi,
                                    std::size_t points);

}  // namespace rggmst
