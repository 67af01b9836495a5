#include "rggmst/trial_kernels.hpp"

#include <algorithm>
#include <cmath>

namespace rggmst {

namespace {

constexpr double kSlack = 1e-12;

RemovalOutcome remove_one(const Rgg& g, const MstResult& full, std::size_t index) {
  RemovalOutcome out;
  out.removed = index;
  out.degree = full.degrees[index];
  out.full_weight = full.total_weight;
  const Rgg reduced = build_rgg(g.point_set().without(index), g.radius(), g.weights());
  out.reduced_weight = minimum_spanning_forest(reduced).total_weight;
  out.bound = g.weights().xi_max() * out.degree * g.weights().length_power(g.radius());
  const double diff = std::abs(out.full_weight - out.reduced_weight);
  out.violated = diff > out.bound + kSlack * std::max(1.0, out.full_weight);
  return out;
}

}  // namespace

std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg, const SweepPoint& point,
                                    std::uint64_t first, std::uint64_t count, int workers) {
  std::vector<TrialRecord> out(count);
  parallel_for(count, workers, [&](std::size_t i) { out[i] = run_trial(cfg, point, first + i); });
  return out;
}

std::vector<RemovalOutcome> evaluate_removals(const Rgg& g, const MstResult& full,
                                              std::span<const std::size_t> indices, int workers) {
  std::vector<RemovalOutcome> out(indices.size());
  parallel_for(indices.size(), workers,
               [&](std::size_t i) { out[i] = remove_one(g, full, indices[i]); });
  return out;
}

namespace reference {

std::vector<TrialRecord> run_trials_serial(const ExperimentConfig& cfg, const SweepPoint& point,
                                           std::uint64_t first, std::uint64_t count) {
  std::vector<TrialRecord> out;
  out.reserve(count);
  for (std::uint64_t t = 0; t < count; ++t) out.push_back(run_trial(cfg, point, first + t));
  return out;
}

std::vector<RemovalOutcome> evaluate_removals_serial(const Rgg& g, const MstResult& full,
                                                     std::span<const std::size_t> indices) {
  std::vector<RemovalOutcome> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(remove_one(g, full, i));
  return out;
}

}  // namespace reference

}  // namespace rggmst
