#include "rggmst/trial.hpp"

#include <chrono>
#include <cmath>

#include "rggmst/errors.hpp"
#include "rggmst/mst.hpp"
#include "rggmst/rng.hpp"
#include "rggmst/sampling.hpp"

namespace rggmst {

namespace {
constexpr double kSlack = 1e-12;
}

SweepPoint prepare_sweep_point(const ExperimentConfig& cfg, std::uint64_t n) {
  SweepPoint sp;
  sp.n = n;
  const double nd = static_cast<double>(n);
  sp.radius = radius_for(nd, cfg.radius_rule, cfg.density.eps1(), cfg.alpha);
  sp.plan = plan_tiling(nd, sp.radius.radius, cfg.a_box);
  sp.thresholds = theorem_thresholds(nd, sp.plan.a_eff, cfg.bound_params());
  return sp;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t n, std::uint64_t trial,
                         Process process) {
  return Rng::stream(master_seed, static_cast<std::uint64_t>(process), n, trial).seed();
}

TrialRecord run_trial(const ExperimentConfig& cfg, const SweepPoint& point,
                      std::uint64_t trial_index) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.n = point.n;
  rec.trial_index = trial_index;
  rec.radius = point.radius.radius;

  const std::uint64_t seed = trial_seed(cfg.master_seed, point.n, trial_index, cfg.process);
  PointSet ps = cfg.process == Process::Poisson
                    ? sample_poisson(static_cast<double>(point.n), cfg.density, seed)
                    : sample_binomial(point.n, cfg.density, seed);
  rec.node_count = ps.size();

  const Rgg g = build_rgg(std::move(ps), rec.radius, cfg.weights);
  const MstResult m = minimum_spanning_forest(g);
  rec.mst_total = m.total_weight;
  rec.scaled_mst = m.total_weight * std::pow(static_cast<double>(point.n), cfg.alpha / 2.0 - 1.0);
  rec.components = m.components;
  rec.connected = m.components <= 1;
  rec.max_degree = mst_degree_stats(m).max_degree;

  const OccupancyReport occ = occupancy(g.point_set(), point.plan, cfg.density);
  rec.e_dense = occ.e_dense;
  rec.e_poi = occ.e_poi;
  rec.isolated_count = occ.isolated_count;
  rec.y_alpha = gap_sum(occ, cfg.alpha);

  const LowerBoundCheck low = lower_bound_count(g, m, point.plan, occ, cfg.weights);
  rec.lower_bound = low.bound;
  rec.lower_checked = low.applicable;
  rec.lower_ok = !low.applicable || (low.edges_ok && low.inequality_ok);

  try {
    const TuniResult t = build_tuni(g, point.plan, occ);
    rec.tuni_built = t.built;
    rec.tuni_weight = t.weight;
    rec.tuni_rhs = t.upper_rhs;
  } catch (const ConstructionError&) {
    rec.tuni_error = true;
  }

  rec.sandwich_checked = rec.connected && rec.e_poi;
  if (rec.sandwich_checked) {
    const double tol = kSlack * std::max(1.0, rec.mst_total);
    rec.sandwich_ok = rec.tuni_built && rec.lower_bound <= rec.mst_total + tol &&
                      rec.mst_total <= rec.tuni_weight + tol;
  }

  const Thresholds& th = point.thresholds;
  rec.above_lower = th.lower_vacuous || rec.mst_total >= th.lower;
  rec.below_upper = rec.mst_total <= th.upper;
  rec.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace rggmst
