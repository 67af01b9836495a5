#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace rggmst {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

[[nodiscard]] inline double distance(Point a, Point b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// Node density f on the unit square, piecewise constant on a k x k grid.
///
/// `eps1` and `eps2` are the declared bounds eps1 <= f <= eps2. They need not
/// be tight: a uniform density may declare eps2 = 2, which changes rejection
/// envelopes and coupled processes but not f itself.
class DensitySpec {
 public:
  enum class Kind { Uniform, Piecewise, Tabulated };

  static DensitySpec uniform(double eps1 = 1.0, double eps2 = 1.0);

  /// `cells` is row-major with row index = floor(y * k). Throws ConfigError
  /// unless the cells lie in [eps1, eps2] and integrate to 1 within 1e-9.
  static DensitySpec piecewise(std::size_t k, std::vector<double> cells, double eps1,
                               double eps2, Kind kind = Kind::Piecewise);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] double eps1() const noexcept { return eps1_; }
  [[nodiscard]] double eps2() const noexcept { return eps2_; }
  [[nodiscard]] std::size_t resolution() const noexcept { return k_; }
  [[nodiscard]] const std::vector<double>& cells() const noexcept { return cells_; }

  [[nodiscard]] double operator()(Point p) const noexcept;

  /// Exact integral of f over [x0,x1] x [y0,y1] (clipped to the unit square).
  [[nodiscard]] double mass(double x0, double y0, double x1, double y1) const noexcept;

 private:
  DensitySpec() = default;
  void validate() const;

  Kind kind_ = Kind::Uniform;
  std::size_t k_ = 1;
  std::vector<double> cells_{1.0};
  double eps1_ = 1.0;
  double eps2_ = 1.0;
};

}  // namespace rggmst
