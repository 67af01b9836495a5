#include "rggmst/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rggmst/errors.hpp"

namespace rggmst {

namespace {

constexpr double kTwoRootTwo = 2.0 * std::numbers::sqrt2;

std::size_t odd_at_least(double x) {
  auto v = static_cast<std::size_t>(std::ceil(x));
  if (v % 2 == 0) ++v;
  return v;
}

void fill_labels(TilingPlan& plan) {
  const std::size_t side = plan.side();
  const std::size_t L = plan.fine_per_coarse;
  plan.label_of.assign(side * side, 0);
  plan.cell_of.assign(side * side, 0);
  std::uint32_t label = 0;
  for (std::size_t strip = 0; strip < plan.coarse_per_side; ++strip) {
    for (std::size_t k = 0; k < side; ++k) {
      const std::size_t col = strip % 2 == 0 ? k : side - 1 - k;
      for (std::size_t s = 0; s < L; ++s) {
        const std::size_t row = strip * L + (k % 2 == 0 ? s : L - 1 - s);
        const std::size_t cell = row * side + col;
        plan.label_of[cell] = label;
        plan.cell_of[label] = static_cast<std::uint32_t>(cell);
        ++label;
      }
    }
  }
}

}  // namespace

std::size_t TilingPlan::fine_cell(Point p) const noexcept {
  const std::size_t s = side();
  const auto fs = static_cast<double>(s);
  const auto col = std::min(static_cast<std::size_t>(p.x * fs), s - 1);
  const auto row = std::min(static_cast<std::size_t>(p.y * fs), s - 1);
  return row * s + col;
}

std::size_t TilingPlan::coarse_of_cell(std::size_t cell) const noexcept {
  const std::size_t s = side();
  const std::size_t row = cell / s / fine_per_coarse;
  const std::size_t col = cell % s / fine_per_coarse;
  return row * coarse_per_side + col;
}

TilingPlan plan_tiling(double n, double radius, double a_target) {
  if (!(radius > 0.0) || radius > 1.0) throw ParameterError("tiling radius must lie in (0, 1]");
  if (!(a_target > 0.0)) throw ParameterError("tiling box parameter A must be positive");
  if (!(n >= 2.0)) throw ParameterError("tiling needs n >= 2");

  TilingPlan plan;
  plan.n_ref = n;
  plan.radius = radius;
  plan.a_target = a_target;

  // Largest t = r / (2 sqrt 2 + delta) with delta >= sqrt r and 1/t odd.
  const double root_r = std::sqrt(radius);
  const std::size_t w = odd_at_least((kTwoRootTwo + root_r) / radius);
  if (w < 3) throw ParameterError("radius too large for an odd coarse grid with W >= 3");
  plan.coarse_per_side = w;
  plan.t = 1.0 / static_cast<double>(w);
  plan.delta = radius * static_cast<double>(w) - kTwoRootTwo;
  plan.delta_in_window = plan.delta >= root_r && plan.delta < 2.0 * root_r;
  if (!(kTwoRootTwo * plan.t < radius)) {
    throw ConstructionError("coarse squares too large: 2 sqrt(2) t >= r");
  }

  const double root_n = std::sqrt(n);
  const double quarter = std::pow(std::log(n), 0.25);
  plan.a_window_lo = a_target + 1.0 / quarter;
  plan.a_window_hi = a_target + 2.0 / quarter;
  const double span = root_n * plan.t;  // = L * A_eff

  auto a_for = [&](std::size_t l) { return span / static_cast<double>(l); };
  std::size_t best_l = 0;
  const double mid = 0.5 * (plan.a_window_lo + plan.a_window_hi);
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t l = odd_at_least(std::max(1.0, span / plan.a_window_hi));
       static_cast<double>(l) <= span / plan.a_window_lo; l += 2) {
    const double ae = a_for(l);
    if (ae < plan.a_window_lo || ae >= plan.a_window_hi) continue;
    if (std::abs(ae - mid) < best_score) {
      best_score = std::abs(ae - mid);
      best_l = l;
    }
  }
  plan.a_in_window = best_l != 0;
  if (!plan.a_in_window) {
    const double ideal = std::max(1.0, span / a_target);
    auto below = static_cast<std::size_t>(std::floor(ideal));
    if (below % 2 == 0) --below;  // largest odd <= ideal, at least 1
    const std::size_t above = below + 2;
    best_l = std::abs(a_for(below) - a_target) <= std::abs(a_for(above) - a_target) ? below
                                                                                      : above;
  }
  plan.fine_per_coarse = best_l;
  plan.a = plan.t / static_cast<double>(best_l);
  plan.a_eff = root_n * plan.a;

  fill_labels(plan);
  return plan;
}

OccupancyReport occupancy(std::span<const Point> points, const TilingPlan& plan,
                          const DensitySpec& density) {
  OccupancyReport rep;
  const std::size_t fine = plan.fine_count();
  const std::size_t side = plan.side();
  rep.coarse_counts.assign(plan.coarse_count(), 0);
  rep.fine_counts.assign(fine, 0);
  rep.total_points = points.size();
  for (const Point& p : points) {
    const std::size_t cell = plan.fine_cell(p);
    ++rep.fine_counts[plan.label_of[cell]];
    ++rep.coarse_counts[plan.coarse_of_cell(cell)];
  }

  const double nt2 = plan.n_ref * plan.t * plan.t;
  rep.dense_lo = density.eps1() * nt2 / 2.0;
  rep.dense_hi = 2.0 * density.eps2() * nt2;

  rep.e_poi = true;
  rep.e_dense = rep.total_points > 0;
  for (std::uint32_t c : rep.coarse_counts) {
    const double count = c;
    if (count < rep.dense_lo || count > rep.dense_hi) rep.e_poi = false;
    // Extremes over removing one node: fewest when the node came from here,
    // most when it came from elsewhere (if there is an elsewhere).
    const double fewest = c > 0 ? count - 1.0 : count;
    const double most = rep.total_points > c ? count : count - 1.0;
    if (fewest < rep.dense_lo || most > rep.dense_hi) rep.e_dense = false;
  }

  rep.isolated.assign(fine, 0);
  for (std::uint32_t label = 0; label < fine; ++label) {
    if (rep.fine_counts[label] == 0) continue;
    rep.occupied.push_back(label);
    const std::size_t cell = plan.cell_of[label];
    const auto row = static_cast<long>(cell / side);
    const auto col = static_cast<long>(cell % side);
    bool alone = true;
    for (long dr = -1; dr <= 1 && alone; ++dr) {
      for (long dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        const long r = row + dr;
        const long c = col + dc;
        if (r < 0 || c < 0 || r >= static_cast<long>(side) || c >= static_cast<long>(side)) {
          continue;
        }
        const auto ncell = static_cast<std::size_t>(r) * side + static_cast<std::size_t>(c);
        if (rep.fine_counts[plan.label_of[ncell]] != 0) {
          alone = false;
          break;
        }
      }
    }
    if (alone) {
      rep.isolated[label] = 1;
      ++rep.isolated_count;
    }
  }

  if (!rep.occupied.empty()) {
    rep.gaps.reserve(rep.occupied.size() + 1);
    rep.gaps.push_back(rep.occupied.front());
    for (std::size_t j = 1; j < rep.occupied.size(); ++j) {
      rep.gaps.push_back(rep.occupied[j] - rep.occupied[j - 1]);
    }
    rep.gaps.push_back(fine - 1 - rep.occupied.back());
  }
  return rep;
}

std::array<std::vector<std::uint32_t>, 9> independence_families(const TilingPlan& plan) {
  std::array<std::vector<std::uint32_t>, 9> families;
  const std::size_t side = plan.side();
  for (std::size_t row = 1; row + 1 < side; ++row) {
    for (std::size_t col = 1; col + 1 < side; ++col) {
      families[3 * (row % 3) + col % 3].push_back(plan.label_of[row * side + col]);
    }
  }
  return families;
}

double gap_sum(const OccupancyReport& report, double alpha) {
  if (report.gaps.empty()) {
    const auto fine = static_cast<double>(report.fine_counts.size());
    return std::pow(fine - 1.0, alpha);
  }
  double y = 0.0;
  for (std::uint64_t t : report.gaps) {
    if (t > 0) y += std::pow(static_cast<double>(t), alpha);
  }
  return y;
}

TuniResult build_tuni(const Rgg& g, const TilingPlan& plan, const OccupancyReport& report,
                      bool require_e_poi) {
  TuniResult out;
  if ((require_e_poi && !report.e_poi) || g.node_count() == 0) return out;

  const auto& pts = g.points();
  const WeightSpec& w = g.weights();
  const double r = g.radius();
  const std::size_t fine = plan.fine_count();
  constexpr double kSlack = 1.0 + 1e-12;

  // Nodes of each fine square, in increasing node index.
  std::vector<std::uint32_t> start(fine + 1, 0);
  std::vector<std::uint32_t> label_of_node(pts.size());
  for (std::size_t v = 0; v < pts.size(); ++v) {
    label_of_node[v] = plan.label(pts[v]);
    ++start[label_of_node[v] + 1];
  }
  for (std::size_t l = 0; l < fine; ++l) start[l + 1] += start[l];
  std::vector<std::uint32_t> members(pts.size());
  {
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (std::size_t v = 0; v < pts.size(); ++v) {
      members[fill[label_of_node[v]]++] = static_cast<std::uint32_t>(v);
    }
  }

  std::vector<MstEdge> edges;
  edges.reserve(pts.size());
  const double star_edge_cap = w.xi_max() * w.length_power(plan.a * std::numbers::sqrt2);

  std::uint32_t prev_label = 0;
  bool have_prev = false;
  for (std::uint32_t label : report.occupied) {
    const std::uint32_t* first = members.data() + start[label];
    const std::uint32_t* last = members.data() + start[label + 1];
    const std::uint32_t root = *first;
    double star = 0.0;
    for (const std::uint32_t* v = first + 1; v != last; ++v) {
      const double d = distance(pts[root], pts[*v]);
      if (!(d < r)) throw ConstructionError("star edge inside a fine square is not an RGG edge");
      const double wt = w.length_power(d) * w.xi(pts[root], pts[*v]);
      edges.push_back({root, *v, wt});
      star += wt;
    }
    if (star > static_cast<double>(last - first) * star_edge_cap * kSlack) {
      throw ConstructionError("star subtree exceeds N(R) xi_max (a sqrt 2)^alpha");
    }
    out.star_weight += star;

    if (have_prev) {
      MstEdge best{0, 0, std::numeric_limits<double>::infinity()};
      double best_d = 0.0;
      for (auto u = start[prev_label]; u < start[prev_label + 1]; ++u) {
        for (auto v = start[label]; v < start[label + 1]; ++v) {
          const std::uint32_t a = std::min(members[u], members[v]);
          const std::uint32_t b = std::max(members[u], members[v]);
          const double d = distance(pts[a], pts[b]);
          if (!(d < r)) continue;
          const double wt = w.length_power(d) * w.xi(pts[a], pts[b]);
          if (wt < best.weight || (wt == best.weight && std::pair(a, b) < std::pair(best.i, best.j))) {
            best = {a, b, wt};
            best_d = d;
          }
        }
      }
      if (!std::isfinite(best.weight)) {
        throw ConstructionError("no RGG edge between consecutive occupied squares " +
                                std::to_string(prev_label) + " and " + std::to_string(label));
      }
      const auto gap = static_cast<double>(label - prev_label);
      // Squares whose labels differ by T are at most T steps apart on the grid.
      const double reach = plan.a * std::hypot(gap + 1.0, 1.0);
      if (best_d > reach * kSlack) {
        throw ConstructionError("bridge longer than the serpentine gap allows");
      }
      edges.push_back(best);
      out.bridge_weight += best.weight;
    }
    prev_label = label;
    have_prev = true;
  }

  out.tree = make_forest_result(pts.size(), std::move(edges));
  if (out.tree.components != 1) throw ConstructionError("T_uni does not span the graph");
  out.weight = out.tree.total_weight;
  out.built = true;
  out.upper_rhs = w.xi_max() * w.length_power(2.0 * plan.a) *
                  (static_cast<double>(pts.size()) + gap_sum(report, w.alpha()));
  return out;
}

LowerBoundCheck lower_bound_count(const Rgg& g, const MstResult& m, const TilingPlan& plan,
                                  const OccupancyReport& report, const WeightSpec& weights) {
  LowerBoundCheck out;
  out.isolated = report.isolated_count;
  const double a_pow = weights.length_power(plan.a);
  out.h_alpha = a_pow * static_cast<double>(out.isolated);
  out.bound = 0.5 * weights.xi_min() * out.h_alpha;
  out.applicable = m.components == 1 && report.q_occupied() >= 2;
  if (!out.applicable) return out;

  const auto& pts = g.points();
  std::vector<std::uint8_t> has_exit(report.isolated.size(), 0);
  for (const MstEdge& e : m.edges) {
    const std::uint32_t li = plan.label(pts[e.i]);
    const std::uint32_t lj = plan.label(pts[e.j]);
    if (li == lj) continue;
    const bool long_enough = distance(pts[e.i], pts[e.j]) >= plan.a * (1.0 - 1e-12);
    for (std::uint32_t l : {li, lj}) {
      if (!report.isolated[l]) continue;
      has_exit[l] = 1;
      if (!long_enough) out.edges_ok = false;
    }
  }
  for (std::size_t l = 0; l < report.isolated.size(); ++l) {
    if (report.isolated[l] && !has_exit[l]) out.edges_ok = false;
  }
  out.inequality_ok = m.total_weight >= out.bound * (1.0 - 1e-12);
  return out;
}

}  // namespace rggmst
