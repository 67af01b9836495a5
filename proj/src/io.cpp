#include "rggmst/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rggmst/errors.hpp"

namespace rggmst {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trials_csv_header() {
  return "n,trial,nodes,radius,mst_total,scaled_mst,components,connected,e_dense,e_poi,"
         "isolated,lower_bound,lower_checked,lower_ok,y_alpha,tuni_built,tuni_weight,tuni_rhs,"
         "tuni_error,sandwich_checked,sandwich_ok,max_degree,above_lower,below_upper\n";
}

std::string trials_csv_row(const TrialRecord& r) {
  std::ostringstream s;
  auto flag = [](bool b) { return b ? '1' : '0'; };
  s << r.n << ',' << r.trial_index << ',' << r.node_count << ',' << format_double(r.radius) << ','
    << format_double(r.mst_total) << ',' << format_double(r.scaled_mst) << ',' << r.components
    << ',' << flag(r.connected) << ',' << flag(r.e_dense) << ',' << flag(r.e_poi) << ','
    << r.isolated_count << ',' << format_double(r.lower_bound) << ',' << flag(r.lower_checked)
    << ',' << flag(r.lower_ok) << ',' << format_double(r.y_alpha) << ',' << flag(r.tuni_built)
    << ',' << format_double(r.tuni_weight) << ',' << format_double(r.tuni_rhs) << ','
    << flag(r.tuni_error) << ',' << flag(r.sandwich_checked) << ',' << flag(r.sandwich_ok) << ','
    << r.max_degree << ',' << flag(r.above_lower) << ',' << flag(r.below_upper) << '\n';
  return s.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

void write_points_csv(const PointSet& ps, const std::filesystem::path& path) {
  std::ostringstream s;
  s << "x,y,color\n";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const char* color = ps.colors.empty() ? "none"
                        : ps.colors[i] == Color::Green ? "green"
                                                       : "red";
    s << format_double(ps.points[i].x) << ',' << format_double(ps.points[i].y) << ',' << color
      << '\n';
  }
  write_text(path, s.str());
}

void write_edges_csv(const Rgg& g, const std::filesystem::path& path) {
  std::ostringstream s;
  s << "i,j,dist,weight\n";
  for (const auto& e : g.edges()) {
    s << e.i << ',' << e.j << ',' << format_double(e.dist) << ',' << format_double(e.weight)
      << '\n';
  }
  write_text(path, s.str());
}

void write_mst_csv(const MstResult& m, const std::filesystem::path& path) {
  std::ostringstream s;
  s << "i,j,weight\n";
  for (const auto& e : m.edges) s << e.i << ',' << e.j << ',' << format_double(e.weight) << '\n';
  write_text(path, s.str());
}

void write_bounds_csv(std::span<const BoundsRow> rows, const std::filesystem::path& path) {
  std::ostringstream s;
  s << "A,C1,C2\n";
  for (const auto& r : rows) {
    s << format_double(r.a) << ',' << format_double(r.c1) << ',' << format_double(r.c2) << '\n';
  }
  write_text(path, s.str());
}

std::string mst_json(const MstResult& m) {
  const auto deg = mst_degree_stats(m);
  json j;
  j["total_weight"] = m.total_weight;
  j["edges"] = m.edges.size();
  j["components"] = m.components;
  j["forest"] = m.forest;
  j["max_degree"] = deg.max_degree;
  j["degree_histogram"] = deg.histogram;
  return j.dump(2) + "\n";
}

std::string plan_json(const TilingPlan& plan) {
  json j;
  j["n"] = plan.n_ref;
  j["radius"] = plan.radius;
  j["A"] = plan.a_target;
  j["W"] = plan.coarse_per_side;
  j["L"] = plan.fine_per_coarse;
  j["t"] = plan.t;
  j["a"] = plan.a;
  j["A_eff"] = plan.a_eff;
  j["delta"] = plan.delta;
  j["delta_in_window"] = plan.delta_in_window;
  j["A_window"] = {plan.a_window_lo, plan.a_window_hi};
  j["A_in_window"] = plan.a_in_window;
  return j.dump(2) + "\n";
}

std::string occupancy_json(const OccupancyReport& report) {
  json j;
  j["total_points"] = report.total_points;
  j["dense_range"] = {report.dense_lo, report.dense_hi};
  j["e_poi"] = report.e_poi;
  j["e_dense"] = report.e_dense;
  j["occupied"] = report.q_occupied();
  j["isolated"] = report.isolated_count;
  j["gaps"] = report.gaps;
  return j.dump(2) + "\n";
}

std::string beta_json(const BetaOptimum& beta, const BoundParams& params) {
  json j;
  j["alpha"] = params.alpha;
  j["eps1"] = params.eps1;
  j["eps2"] = params.eps2;
  j["xi_min"] = params.xi_min;
  j["xi_max"] = params.xi_max;
  j["delta_rule"] = params.delta_rule == DeltaRule::Stated ? "stated" : "coupling";
  j["beta_low"] = beta.beta_low;
  j["argmax_C1"] = beta.argmax;
  j["beta_up"] = beta.beta_up;
  j["argmin_C2"] = beta.argmin;
  j["A_max"] = beta.a_max;
  j["multimodal_low"] = beta.multimodal_low;
  j["multimodal_up"] = beta.multimodal_up;
  return j.dump(2) + "\n";
}

}  // namespace rggmst
