#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rggmst/config.hpp"
#include "rggmst/stats.hpp"
#include "rggmst/trial.hpp"

namespace rggmst {

struct NSummary {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  double radius = 0.0;
  double a_eff = 0.0;
  bool condition_i = false;
  bool l2_condition = false;
  bool a_in_window = false;
  double mean = 0.0;  // of scaled_mst
  double variance = 0.0;
  double std_error = 0.0;
  double connected_freq = 0.0;
  double e_poi_freq = 0.0;
  double e_dense_freq = 0.0;
  std::uint64_t sandwich_checked = 0;
  std::uint64_t sandwich_violations = 0;
  std::uint64_t lower_violations = 0;
  std::uint64_t tuni_errors = 0;
  double wall_time = 0.0;  // summed over trials
};

struct VarianceScalingPoint {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  double radius = 0.0;
  double variance = 0.0;
  double bound_scale = 0.0;  // r^2 (n r^2)^alpha
  double ratio = 0.0;        // variance / bound_scale
  double ratio_se = 0.0;     // normal-theory standard error of ratio
  bool excluded = false;     // zero variance or fewer than 100 trials
};

struct VarianceScalingReport {
  std::vector<VarianceScalingPoint> points;
  double slope = 0.0;  // log variance against log bound_scale
  double spearman_rho = 0.0;  // ratio against n
  double p_value = 1.0;       // one-sided, upward
  bool upward_trend = false;  // p_value < 0.05
};

struct DeviationRow {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  bool lower_vacuous = false;
  double lower_threshold = 0.0;
  double upper_threshold = 0.0;
  double lower_freq = 0.0;  // P(MST_n >= lower threshold)
  Interval lower_ci;
  double upper_freq = 0.0;  // P(MST_n <= upper threshold)
  Interval upper_ci;
  double mean_scaled = 0.0;
  double mean_se = 0.0;
  double mean_lower = 0.0;
  double mean_upper = 0.0;
  bool mean_within = false;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<TrialRecord> records;  // sorted by (n, trial)
  std::vector<NSummary> summaries;
  std::optional<VarianceScalingReport> variance;  // when the sweep qualifies
  std::vector<DeviationRow> deviations;
};

/// Runs every (n, trial). With write_outputs, streams trials.csv into
/// cfg.output_dir one n at a time and finishes with summary.json; an I/O
/// failure throws IoError and leaves the rows already flushed in place.
SweepResult run_sweep(const ExperimentConfig& cfg, bool write_outputs = true);

std::vector<NSummary> summarize(std::span<const TrialRecord> records,
                                std::span<const SweepPoint> points);

/// Needs at least three n values with 100+ trials; throws ParameterError otherwise.
VarianceScalingReport variance_scaling_report(std::span<const TrialRecord> records,
                                              const ExperimentConfig& cfg);

std::vector<DeviationRow> deviation_report(std::span<const TrialRecord> records,
                                           std::span<const Thresholds> thresholds);

struct OneNodeReport {
  std::uint64_t n = 0;  // nodes after removal; instances carry n + 1
  double radius = 0.0;  // r_{n+1}
  std::uint64_t instances = 0;
  std::uint64_t dense_instances = 0;
  std::uint64_t pairs = 0;  // (instance, removed node) pairs checked
  std::uint64_t violations = 0;
  std::uint64_t leaf_pairs = 0;
  double max_ratio = 0.0;  // max |MST_{n+1} - MST(i)| / (xi_max d_i r^alpha)
  std::uint32_t max_degree = 0;
  double degree_cap = 0.0;  // 200 eps2 (n+1) r^2
  std::uint64_t degree_violations = 0;
};

/// Samples n + 1 nodes per instance; on instances where e_dense holds, removes
/// `removals` random nodes in turn and compares forest weights at r_{n+1}.
OneNodeReport one_node_difference_check(std::uint64_t n, const ExperimentConfig& cfg,
                                        std::uint64_t instances, std::uint64_t removals);

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
};

struct PoissonComparison {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  SampleMoments binomial;
  SampleMoments poisson;
  double mean_diff = 0.0;
  double pooled_se = 0.0;
  bool means_agree = false;  // |mean_diff| <= 3 pooled_se
  double ks = 0.0;
  std::uint64_t count_at_n = 0;  // Poisson trials with exactly n nodes
  double freq_at_n = 0.0;
  double stirling = 0.0;     // 1/sqrt(2 pi n)
  double exact_pmf = 0.0;    // e^-n n^n / n!
  double freq_sigma = 0.0;   // binomial sd of freq_at_n around stirling
  bool freq_agrees = false;  // |freq_at_n - stirling| <= 3 freq_sigma
  std::vector<double> binomial_scaled;
  std::vector<double> poisson_scaled;
};

/// Matched binomial(n) and Poisson(n) runs; needs trials >= 500.
PoissonComparison poissonization_comparison(const ExperimentConfig& cfg, std::uint64_t n,
                                            std::uint64_t trials);

std::string summary_json(const SweepResult& result, const ExperimentConfig& cfg);
std::string one_node_json(const OneNodeReport& r);
std::string poisson_json(const PoissonComparison& r);

}  // namespace rggmst
