#pragma once

#include <cstdint>
#include <vector>

#include "rggmst/density.hpp"
#include "rggmst/sampling.hpp"

namespace rggmst {

/// Edge weight w(x, y) = d(x, y)^alpha * xi(x, y).
///
/// xi is either a constant or a symmetric table indexed by the pair of cells
/// (on a g x g grid) holding the two endpoints.
class WeightSpec {
 public:
  static WeightSpec constant(double alpha, double xi = 1.0);

  /// `table` has g^2 x g^2 entries, row-major over flattened cell indices.
  /// Throws ConfigError if it is not symmetric or leaves [xi_min, xi_max].
  static WeightSpec tabulated(double alpha, std::size_t g, std::vector<double> table,
                              double xi_min, double xi_max);

  /// xi(x, y) = (h(cell x) + h(cell y)) / 2 for per-cell factors h.
  static WeightSpec from_cell_factors(double alpha, std::size_t g,
                                      const std::vector<double>& factors, double xi_min,
                                      double xi_max);

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double xi_min() const noexcept { return xi_min_; }
  [[nodiscard]] double xi_max() const noexcept { return xi_max_; }
  [[nodiscard]] bool is_constant() const noexcept { return table_.empty(); }
  [[nodiscard]] std::size_t resolution() const noexcept { return g_; }
  [[nodiscard]] const std::vector<double>& table() const noexcept { return table_; }

  [[nodiscard]] double xi(Point a, Point b) const noexcept;
  [[nodiscard]] double length_power(double d) const noexcept;
  [[nodiscard]] double weight(Point a, Point b) const noexcept {
    return length_power(distance(a, b)) * xi(a, b);
  }

  /// Same spec with every xi value (and both bounds) multiplied by c > 0.
  [[nodiscard]] WeightSpec scaled(double c) const;

 private:
  WeightSpec() = default;
  [[nodiscard]] std::size_t cell(Point p) const noexcept;

  double alpha_ = 1.0;
  double xi_const_ = 1.0;
  double xi_min_ = 1.0;
  double xi_max_ = 1.0;
  std::size_t g_ = 1;
  std::vector<double> table_;
};

struct Edge {
  std::uint32_t i = 0;  // i < j
  std::uint32_t j = 0;
  double dist = 0.0;
  double weight = 0.0;
};

/// Bucket grid with cell side >= r, so every neighbour of a point lies in
/// its own cell or one of the eight around it.
struct GridIndex {
  std::size_t side = 1;
  std::vector<std::uint32_t> cell_start;  // side*side + 1 offsets into items
  std::vector<std::uint32_t> items;       // point indices grouped by cell
};

/// Random geometric graph: (i, j) is an edge iff d(X_i, X_j) < radius.
/// Immutable once built; share it read-only across threads.
class Rgg {
 public:
  Rgg(PointSet points, double radius, WeightSpec weights, std::vector<Edge> edges,
      GridIndex grid)
      : points_(std::move(points)),
        radius_(radius),
        weights_(std::move(weights)),
        edges_(std::move(edges)),
        grid_(std::move(grid)) {}

  [[nodiscard]] const PointSet& point_set() const noexcept { return points_; }
  [[nodiscard]] const std::vector<Point>& points() const noexcept { return points_.points; }
  [[nodiscard]] std::size_t node_count() const noexcept { return points_.size(); }
  [[nodiscard]] double radius() const noexcept { return radius_; }
  [[nodiscard]] const WeightSpec& weights() const noexcept { return weights_; }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] const GridIndex& grid() const noexcept { return grid_; }

 private:
  PointSet points_;
  double radius_;
  WeightSpec weights_;
  std::vector<Edge> edges_;
  GridIndex grid_;
};

struct RadiusRule {
  enum class Kind {
    Theorem,   // sqrt(M log n / n), value = M
    LogScale,  // value * sqrt(log n / n)
    Power,     // value * n^(-exponent)
    Constant,  // value
  };
  Kind kind = Kind::Power;
  double value = 1.0;
  double exponent = 1.0 / 3.0;
};

struct RadiusChoice {
  double radius = 0.0;
  /// M > 1600/eps1 (only meaningful for the Theorem rule; false otherwise).
  bool theorem_constant_ok = false;
  /// r >= sqrt(M log n / n) for some M > 1600/eps1 and the rule decays to 0.
  bool condition_i = false;
  /// n^(alpha / (2(1+alpha))) * r_n -> 0 along the rule (decided analytically).
  bool l2_condition = false;
};

/// Evaluates the adjacency distance. Throws ParameterError when r is not in (0, 1].
RadiusChoice radius_for(double n, const RadiusRule& rule, double eps1, double alpha);

Rgg build_rgg(PointSet points, double radius, const WeightSpec& weights);

bool is_connected(const Rgg& g);

/// Number of connected components (isolated nodes count as components).
std::size_t component_count(const Rgg& g);

}  // namespace rggmst
