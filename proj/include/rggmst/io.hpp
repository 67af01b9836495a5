#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "rggmst/bounds.hpp"
#include "rggmst/mst.hpp"
#include "rggmst/rgg.hpp"
#include "rggmst/sampling.hpp"
#include "rggmst/tiling.hpp"
#include "rggmst/trial.hpp"

namespace rggmst {

/// Shortest round-trip text for a double ("%.17g").
std::string format_double(double v);

/// Column order of trials.csv:
///   n, trial, nodes, radius, mst_total, scaled_mst, components, connected,
///   e_dense, e_poi, isolated, lower_bound, lower_checked, lower_ok, y_alpha,
///   tuni_built, tuni_weight, tuni_rhs, tuni_error, sandwich_checked,
///   sandwich_ok, max_degree, above_lower, below_upper
/// Flags are 0/1. wall_time is left out so the file is reproducible.
std::string trials_csv_header();
std::string trials_csv_row(const TrialRecord& r);

/// Throws IoError when the file cannot be written.
void write_text(const std::filesystem::path& path, const std::string& text);

void write_points_csv(const PointSet& ps, const std::filesystem::path& path);  // x,y,color
void write_edges_csv(const Rgg& g, const std::filesystem::path& path);        // i,j,dist,weight
void write_mst_csv(const MstResult& m, const std::filesystem::path& path);    // i,j,weight
void write_bounds_csv(std::span<const BoundsRow> rows, const std::filesystem::path& path);

std::string mst_json(const MstResult& m);
std::string plan_json(const TilingPlan& plan);
std::string occupancy_json(const OccupancyReport& report);
std::string beta_json(const BetaOptimum& beta, const BoundParams& params);

}  // namespace rggmst
