#include "rggmst/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rggmst/errors.hpp"

namespace rggmst {

namespace {

std::size_t cell_index(double v, std::size_t k) noexcept {
  const auto c = static_cast<std::size_t>(v * static_cast<double>(k));
  return std::min(c, k - 1);
}

}  // namespace

DensitySpec DensitySpec::uniform(double eps1, double eps2) {
  DensitySpec d;
  d.kind_ = Kind::Uniform;
  d.eps1_ = eps1;
  d.eps2_ = eps2;
  d.validate();
  return d;
}

DensitySpec DensitySpec::piecewise(std::size_t k, std::vector<double> cells, double eps1,
                                   double eps2, Kind kind) {
  if (k == 0 || cells.size() != k * k) {
    throw ConfigError("density grid must have k*k cells, got " + std::to_string(cells.size()) +
                      " for k=" + std::to_string(k));
  }
  DensitySpec d;
  d.kind_ = kind == Kind::Uniform ? Kind::Piecewise : kind;
  d.k_ = k;
  d.cells_ = std::move(cells);
  d.eps1_ = eps1;
  d.eps2_ = eps2;
  d.validate();
  return d;
}

void DensitySpec::validate() const {
  if (!(eps1_ > 0.0) || !(eps1_ <= 1.0) || !(eps2_ >= 1.0) || !std::isfinite(eps2_)) {
    throw ConfigError("density bounds must satisfy 0 < eps1 <= 1 <= eps2");
  }
  for (double v : cells_) {
    if (!(v >= eps1_ && v <= eps2_)) {
      throw ConfigError("density value " + std::to_string(v) + " outside [eps1, eps2]");
    }
  }
  const double k2 = static_cast<double>(k_ * k_);
  const double integral = std::accumulate(cells_.begin(), cells_.end(), 0.0) / k2;
  if (std::abs(integral - 1.0) > 1e-9) {
    throw ConfigError("density integrates to " + std::to_string(integral) + ", expected 1");
  }
}

double DensitySpec::operator()(Point p) const noexcept {
  if (kind_ == Kind::Uniform) return 1.0;
  return cells_[cell_index(p.y, k_) * k_ + cell_index(p.x, k_)];
}

double DensitySpec::mass(double x0, double y0, double x1, double y1) const noexcept {
  x0 = std::clamp(x0, 0.0, 1.0);
  x1 = std::clamp(x1, 0.0, 1.0);
  y0 = std::clamp(y0, 0.0, 1.0);
  y1 = std::clamp(y1, 0.0, 1.0);
  if (x1 <= x0 || y1 <= y0) return 0.0;
  if (kind_ == Kind::Uniform) return (x1 - x0) * (y1 - y0);

  const double h = 1.0 / static_cast<double>(k_);
  double total = 0.0;
  for (std::size_t cy = 0; cy < k_; ++cy) {
    const double oy = std::min(y1, (cy + 1) * h) - std::max(y0, cy * h);
    if (oy <= 0.0) continue;
    for (std::size_t cx = 0; cx < k_; ++cx) {
      const double ox = std::min(x1, (cx + 1) * h) - std::max(x0, cx * h);
      if (ox <= 0.0) continue;
      total += cells_[cy * k_ + cx] * ox * oy;
    }
  }
  return total;
}

}  // namespace rggmst
