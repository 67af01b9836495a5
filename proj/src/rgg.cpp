#include "rggmst/rgg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rggmst/errors.hpp"
#include "rggmst/union_find.hpp"

namespace rggmst {

WeightSpec WeightSpec::constant(double alpha, double xi) {
  if (!(alpha > 0.0) || !(xi > 0.0)) throw ConfigError("weights need alpha > 0 and xi > 0");
  WeightSpec w;
  w.alpha_ = alpha;
  w.xi_const_ = xi;
  w.xi_min_ = xi;
  w.xi_max_ = xi;
  return w;
}

WeightSpec WeightSpec::tabulated(double alpha, std::size_t g, std::vector<double> table,
                                 double xi_min, double xi_max) {
  if (!(alpha > 0.0)) throw ConfigError("weights need alpha > 0");
  if (!(xi_min > 0.0) || !(xi_min <= xi_max)) {
    throw ConfigError("weights need 0 < xi_min <= xi_max");
  }
  const std::size_t cells = g * g;
  if (g == 0 || table.size() != cells * cells) {
    throw ConfigError("xi table must have g^2 x g^2 entries");
  }
  for (std::size_t a = 0; a < cells; ++a) {
    for (std::size_t b = 0; b < cells; ++b) {
      const double v = table[a * cells + b];
      if (v != table[b * cells + a]) throw ConfigError("xi table is not symmetric");
      if (!(v >= xi_min && v <= xi_max)) {
        throw ConfigError("xi value " + std::to_string(v) + " outside [xi_min, xi_max]");
      }
    }
  }
  WeightSpec w;
  w.alpha_ = alpha;
  w.xi_min_ = xi_min;
  w.xi_max_ = xi_max;
  w.g_ = g;
  w.table_ = std::move(table);
  return w;
}

WeightSpec WeightSpec::from_cell_factors(double alpha, std::size_t g,
                                         const std::vector<double>& factors, double xi_min,
                                         double xi_max) {
  const std::size_t cells = g * g;
  if (g == 0 || factors.size() != cells) throw ConfigError("xi factors must have g^2 entries");
  std::vector<double> table(cells * cells);
  for (std::size_t a = 0; a < cells; ++a) {
    for (std::size_t b = 0; b < cells; ++b) {
      table[a * cells + b] = 0.5 * (factors[a] + factors[b]);
    }
  }
  return tabulated(alpha, g, std::move(table), xi_min, xi_max);
}

std::size_t WeightSpec::cell(Point p) const noexcept {
  const auto g = static_cast<double>(g_);
  const auto cx = std::min(static_cast<std::size_t>(p.x * g), g_ - 1);
  const auto cy = std::min(static_cast<std::size_t>(p.y * g), g_ - 1);
  return cy * g_ + cx;
}

double WeightSpec::xi(Point a, Point b) const noexcept {
  if (table_.empty()) return xi_const_;
  return table_[cell(a) * g_ * g_ + cell(b)];
}

double WeightSpec::length_power(double d) const noexcept {
  if (alpha_ == 1.0) return d;
  if (alpha_ == 2.0) return d * d;
  return std::pow(d, alpha_);
}

WeightSpec WeightSpec::scaled(double c) const {
  if (!(c > 0.0)) throw ConfigError("xi scale factor must be positive");
  WeightSpec w = *this;
  w.xi_const_ *= c;
  w.xi_min_ *= c;
  w.xi_max_ *= c;
  for (double& v : w.table_) v *= c;
  return w;
}

RadiusChoice radius_for(double n, const RadiusRule& rule, double eps1, double alpha) {
  if (!(n >= 2.0)) throw ParameterError("radius_for needs n >= 2");
  const double log_n = std::log(n);
  const double m_min = 1600.0 / eps1;

  RadiusChoice out;
  bool decays = true;
  switch (rule.kind) {
    case RadiusRule::Kind::Theorem:
      out.radius = std::sqrt(rule.value * log_n / n);
      out.theorem_constant_ok = rule.value > m_min;
      out.l2_condition = true;
      break;
    case RadiusRule::Kind::LogScale:
      out.radius = rule.value * std::sqrt(log_n / n);
      out.l2_condition = true;
      break;
    case RadiusRule::Kind::Power:
      out.radius = rule.value * std::pow(n, -rule.exponent);
      decays = rule.exponent > 0.0;
      out.l2_condition = rule.exponent > alpha / (2.0 * (1.0 + alpha));
      break;
    case RadiusRule::Kind::Constant:
      out.radius = rule.value;
      decays = false;
      out.l2_condition = false;
      break;
  }
  if (!(out.radius > 0.0) || out.radius > 1.0) {
    throw ParameterError("adjacency distance " + std::to_string(out.radius) +
                         " is outside (0, 1] for n=" + std::to_string(n));
  }
  out.condition_i = decays && out.radius * out.radius * n / log_n > m_min;
  return out;
}

namespace {

GridIndex make_grid(const std::vector<Point>& pts, double radius) {
  GridIndex grid;
  grid.side = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(1.0 / radius)));
  const std::size_t side = grid.side;
  const auto fside = static_cast<double>(side);
  std::vector<std::uint32_t> cell_of(pts.size());
  grid.cell_start.assign(side * side + 1, 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto cx = std::min(static_cast<std::size_t>(pts[i].x * fside), side - 1);
    const auto cy = std::min(static_cast<std::size_t>(pts[i].y * fside), side - 1);
    cell_of[i] = static_cast<std::uint32_t>(cy * side + cx);
    ++grid.cell_start[cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < side * side; ++c) grid.cell_start[c + 1] += grid.cell_start[c];
  grid.items.resize(pts.size());
  std::vector<std::uint32_t> fill(grid.cell_start.begin(), grid.cell_start.end() - 1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    grid.items[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
  }
  return grid;
}

}  // namespace

Rgg build_rgg(PointSet points, double radius, const WeightSpec& weights) {
  if (!(radius > 0.0) || radius > 1.0) throw ParameterError("radius must lie in (0, 1]");
  const auto& pts = points.points;
  GridIndex grid = make_grid(pts, radius);
  const std::size_t side = grid.side;
  const double r2_filter = radius * radius * (1.0 + 1e-9);

  std::vector<Edge> edges;
  // Expected degree is about pi n r^2; reserve half of that per node.
  const double expect = 1.6 * static_cast<double>(pts.size()) * static_cast<double>(pts.size()) *
                        radius * radius;
  edges.reserve(static_cast<std::size_t>(std::min(expect, 5e8)));

  auto try_pair = [&](std::uint32_t a, std::uint32_t b) {
    const double dx = pts[a].x - pts[b].x;
    const double dy = pts[a].y - pts[b].y;
    const double d2 = dx * dx + dy * dy;
    if (d2 >= r2_filter) return;
    const double d = std::sqrt(d2);
    if (!(d < radius)) return;
    if (b < a) std::swap(a, b);
    edges.push_back({a, b, d, weights.length_power(d) * weights.xi(pts[a], pts[b])});
  };

  // Half-neighbourhood scan: own cell, then E, NW, N, NE so each pair is seen once.
  constexpr int kForward[4][2] = {{1, 0}, {-1, 1}, {0, 1}, {1, 1}};
  for (std::size_t cy = 0; cy < side; ++cy) {
    for (std::size_t cx = 0; cx < side; ++cx) {
      const std::size_t c = cy * side + cx;
      const std::uint32_t begin = grid.cell_start[c];
      const std::uint32_t end = grid.cell_start[c + 1];
      for (std::uint32_t s = begin; s < end; ++s) {
        for (std::uint32_t t = s + 1; t < end; ++t) try_pair(grid.items[s], grid.items[t]);
      }
      for (const auto& off : kForward) {
        const long nx = static_cast<long>(cx) + off[0];
        const long ny = static_cast<long>(cy) + off[1];
        if (nx < 0 || ny < 0 || nx >= static_cast<long>(side) || ny >= static_cast<long>(side)) {
          continue;
        }
        const std::size_t nc = static_cast<std::size_t>(ny) * side + static_cast<std::size_t>(nx);
        for (std::uint32_t s = begin; s < end; ++s) {
          for (std::uint32_t t = grid.cell_start[nc]; t < grid.cell_start[nc + 1]; ++t) {
            try_pair(grid.items[s], grid.items[t]);
          }
        }
      }
    }
  }
  return Rgg(std::move(points), radius, weights, std::move(edges), std::move(grid));
}

std::size_t component_count(const Rgg& g) {
  DisjointSets sets(g.node_count());
  for (const Edge& e : g.edges()) sets.unite(e.i, e.j);
  return sets.set_count();
}

bool is_connected(const Rgg& g) { return component_count(g) <= 1; }

}  // namespace rggmst
