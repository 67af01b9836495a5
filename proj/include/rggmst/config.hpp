#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rggmst/bounds.hpp"
#include "rggmst/density.hpp"
#include "rggmst/rgg.hpp"
#include "rggmst/sampling.hpp"

namespace rggmst {

/// Everything a sweep needs. Stored on disk as one flat JSON object:
///
///   n_values        list of node counts (each >= 2)
///   radius_rule     "power" | "log_scale" | "theorem" | "constant"
///   radius_value    c (or M for "theorem")
///   radius_exponent exponent for "power"
///   alpha           path-length exponent
///   process         "binomial" | "poisson"
///   density         "uniform" | "piecewise" | "tabulated"
///   density_eps1, density_eps2, density_k, density_cells (row-major, k*k)
///   xi              constant edge factor, or
///   xi_grid + xi_table (g^2 x g^2, symmetric) or xi_grid + xi_factors (g^2)
///   xi_min, xi_max  bounds on the edge factor
///   delta_rule      "stated" | "coupling"
///   A               target box parameter
///   trials, master_seed, workers, output_dir
///   lemma_removals  node removals per instance for check-lemma
struct ExperimentConfig {
  std::vector<std::uint64_t> n_values{1000};
  RadiusRule radius_rule{};
  double alpha = 1.0;
  Process process = Process::Binomial;
  DensitySpec density = DensitySpec::uniform();
  WeightSpec weights = WeightSpec::constant(1.0);
  DeltaRule delta_rule = DeltaRule::Stated;
  double a_box = 1.0;
  std::uint64_t trials = 100;
  std::uint64_t master_seed = 1;
  int workers = 1;
  std::string output_dir = "out";
  std::uint64_t lemma_removals = 10;

  /// Throws ConfigError on trials < 1, n < 2, workers < 1, or alpha disagreeing
  /// with the weight spec.
  void validate() const;

  /// Same config with a new alpha (the weight spec follows).
  [[nodiscard]] ExperimentConfig with_alpha(double a) const;

  [[nodiscard]] BoundParams bound_params() const;
};

std::string config_to_json(const ExperimentConfig& cfg);

/// Throws ConfigError on malformed input or unknown keys.
ExperimentConfig config_from_json(const std::string& text);

/// Throws ConfigError if the file cannot be read or parsed.
ExperimentConfig load_config(const std::filesystem::path& path);

void save_config(const ExperimentConfig& cfg, const std::filesystem::path& path);

}  // namespace rggmst
