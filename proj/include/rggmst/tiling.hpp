#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rggmst/density.hpp"
#include "rggmst/mst.hpp"
#include "rggmst/rgg.hpp"

namespace rggmst {

/// Two-level grid over the unit square.
///
/// The coarse level has W x W squares of side t = 1/W with 2*sqrt(2)*t < r, so
/// nodes in corner-sharing coarse squares are always adjacent. Each coarse
/// square is split into L x L fine squares of side a = t/L = A_eff/sqrt(n).
/// W and L are odd, which is what lets the serpentine order below close up.
///
/// Fine squares are labelled 0 .. (W L)^2 - 1. The order walks horizontal
/// strips of height L (one per coarse row), alternating left-to-right and
/// right-to-left; inside a strip it goes column by column, alternating up and
/// down. Consecutive labels always share an edge, and the L^2 squares of each
/// coarse block carry consecutive labels.
struct TilingPlan {
  double n_ref = 0.0;
  double radius = 0.0;
  double a_target = 0.0;

  std::size_t coarse_per_side = 0;  // W
  std::size_t fine_per_coarse = 0;  // L
  double t = 0.0;                   // 1 / W
  double a = 0.0;                   // t / L
  double a_eff = 0.0;               // sqrt(n_ref) * a

  double delta = 0.0;  // realised r/t - 2 sqrt(2)
  bool delta_in_window = false;
  double a_window_lo = 0.0;  // A + 1/(log n)^(1/4)
  double a_window_hi = 0.0;  // A + 2/(log n)^(1/4)
  bool a_in_window = false;

  std::vector<std::uint32_t> label_of;  // grid cell (row * side + col) -> label
  std::vector<std::uint32_t> cell_of;   // label -> grid cell

  [[nodiscard]] std::size_t side() const noexcept { return coarse_per_side * fine_per_coarse; }
  [[nodiscard]] std::size_t fine_count() const noexcept { return side() * side(); }
  [[nodiscard]] std::size_t coarse_count() const noexcept {
    return coarse_per_side * coarse_per_side;
  }

  [[nodiscard]] std::size_t fine_cell(Point p) const noexcept;
  [[nodiscard]] std::uint32_t label(Point p) const noexcept { return label_of[fine_cell(p)]; }
  [[nodiscard]] std::size_t coarse_of_cell(std::size_t cell) const noexcept;
};

/// Picks odd W and L for (n, r, A). Throws ParameterError if r is not in (0, 1]
/// or no odd W >= 3 exists.
TilingPlan plan_tiling(double n, double radius, double a_target);

struct OccupancyReport {
  std::vector<std::uint32_t> coarse_counts;  // per coarse square, row-major
  std::vector<std::uint32_t> fine_counts;    // per label
  std::size_t total_points = 0;
  double dense_lo = 0.0;  // eps1 n t^2 / 2
  double dense_hi = 0.0;  // 2 eps2 n t^2
  /// Every coarse count lies in [dense_lo, dense_hi].
  bool e_poi = false;
  /// Same ranges for every leave-one-node-out configuration.
  bool e_dense = false;
  std::vector<std::uint8_t> isolated;  // per label: occupied, all 8 neighbours empty
  std::size_t isolated_count = 0;
  std::vector<std::uint32_t> occupied;  // increasing labels i_1 < ... < i_Q (0-based)
  std::vector<std::uint64_t> gaps;      // T_1 .. T_{Q+1}; empty when Q = 0

  [[nodiscard]] std::size_t q_occupied() const noexcept { return occupied.size(); }
};

OccupancyReport occupancy(std::span<const Point> points, const TilingPlan& plan,
                          const DensitySpec& density);
inline OccupancyReport occupancy(const PointSet& points, const TilingPlan& plan,
                                 const DensitySpec& density) {
  return occupancy(std::span<const Point>(points.points), plan, density);
}

/// Nine label sets, one per residue class (row mod 3, col mod 3), restricted to
/// squares whose whole 3x3 neighbourhood lies inside the unit square. Index
/// l = 3 * (row mod 3) + (col mod 3).
std::array<std::vector<std::uint32_t>, 9> independence_families(const TilingPlan& plan);

/// Y_alpha = sum of T_j^alpha; ((WL)^2 - 1)^alpha for an empty configuration.
double gap_sum(const OccupancyReport& report, double alpha);

struct TuniResult {
  bool built = false;  // false when e_poi fails; nothing else is filled in
  MstResult tree;
  double weight = 0.0;
  double star_weight = 0.0;
  double bridge_weight = 0.0;
  /// xi_max (2a)^alpha (sum N(R_i) + Y_alpha), evaluated on this configuration.
  double upper_rhs = 0.0;
};

/// Spanning tree made of a star inside each occupied fine square plus the
/// lightest RGG edge between consecutive occupied squares. Throws
/// ConstructionError if a required edge is missing or a per-part bound fails.
/// With require_e_poi = false the tree is attempted even when e_poi fails,
/// in which case a missing bridge is an ordinary outcome rather than a bug.
TuniResult build_tuni(const Rgg& g, const TilingPlan& plan, const OccupancyReport& report,
                      bool require_e_poi = true);

struct LowerBoundCheck {
  double h_alpha = 0.0;  // sum over isolated squares of a^alpha
  std::size_t isolated = 0;
  double bound = 0.0;  // xi_min * h_alpha / 2
  /// Connected graph with at least two occupied squares; otherwise not checked.
  bool applicable = false;
  bool edges_ok = true;       // each isolated square has a leaving MST edge of length >= a
  bool inequality_ok = true;  // MST_n >= bound
};

LowerBoundCheck lower_bound_count(const Rgg& g, const MstResult& m, const TilingPlan& plan,
                                  const OccupancyReport& report, const WeightSpec& weights);

}  // namespace rggmst
