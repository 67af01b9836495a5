#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <vector>

#include "rggmst/config.hpp"
#include "rggmst/mst.hpp"
#include "rggmst/rgg.hpp"
#include "rggmst/trial.hpp"

namespace rggmst {

/// Runs body(i) for i in [0, count) on `workers` OpenMP threads. Results must
/// be written by index; the first exception thrown by any iteration is
/// rethrown once the loop has drained.
template <class Body>
void parallel_for(std::size_t count, int workers, Body&& body) {
  std::exception_ptr failure;
  const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for num_threads(workers) schedule(dynamic)
  for (std::int64_t i = 0; i < total; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(rggmst_parallel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// Trials first..first+count-1 at one sweep point, in trial order.
std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg, const SweepPoint& point,
                                    std::uint64_t first, std::uint64_t count, int workers);

/// MST of the graph with node `removed` deleted, at the same radius.
struct RemovalOutcome {
  std::size_t removed = 0;
  std::uint32_t degree = 0;  // degree of `removed` in the full MST
  double full_weight = 0.0;
  double reduced_weight = 0.0;
  double bound = 0.0;  // xi_max * degree * r^alpha
  bool violated = false;
};

std::vector<RemovalOutcome> evaluate_removals(const Rgg& g, const MstResult& full,
                                              std::span<const std::size_t> indices, int workers);

namespace reference {

std::vector<TrialRecord> run_trials_serial(const ExperimentConfig& cfg, const SweepPoint& point,
                                           std::uint64_t first, std::uint64_t count);

std::vector<RemovalOutcome> evaluate_removals_serial(const Rgg& g, const MstResult& full,
                                                     std::span<const std::size_t> indices);

}  // namespace reference

}  // namespace rggmst
