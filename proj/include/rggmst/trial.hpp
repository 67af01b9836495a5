#pragma once

#include <cstdint>

#include "rggmst/bounds.hpp"
#include "rggmst/config.hpp"
#include "rggmst/rgg.hpp"
#include "rggmst/tiling.hpp"

namespace rggmst {

/// Per-n quantities shared by every trial at that n.
struct SweepPoint {
  std::uint64_t n = 0;
  RadiusChoice radius;
  TilingPlan plan;
  Thresholds thresholds;
};

SweepPoint prepare_sweep_point(const ExperimentConfig& cfg, std::uint64_t n);

/// One row of trials.csv. Everything except wall_time is a pure function of
/// (config, n, trial_index).
struct TrialRecord {
  std::uint64_t n = 0;
  std::uint64_t trial_index = 0;
  std::uint64_t node_count = 0;  // realised number of nodes (random under Poisson sampling)
  double radius = 0.0;
  double mst_total = 0.0;
  double scaled_mst = 0.0;  // mst_total * n^(alpha/2 - 1)
  std::uint64_t components = 0;
  bool connected = false;
  bool e_dense = false;
  bool e_poi = false;
  std::uint64_t isolated_count = 0;
  double lower_bound = 0.0;  // xi_min/2 a^alpha * isolated_count
  bool lower_checked = false;
  bool lower_ok = true;
  double y_alpha = 0.0;
  bool tuni_built = false;
  double tuni_weight = 0.0;
  double tuni_rhs = 0.0;
  bool tuni_error = false;  // construction raised; recorded rather than aborting the sweep
  bool sandwich_checked = false;  // connected and e_poi
  bool sandwich_ok = true;
  std::uint32_t max_degree = 0;
  bool above_lower = false;  // MST_n >= lower threshold (true when vacuous)
  bool below_upper = false;  // MST_n <= upper threshold
  double wall_time = 0.0;    // seconds; not written to trials.csv
};

/// Seed of the sampling stream for (n, trial); independent of scheduling.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t n, std::uint64_t trial,
                         Process process);

TrialRecord run_trial(const ExperimentConfig& cfg, const SweepPoint& point,
                      std::uint64_t trial_index);

}  // namespace rggmst
