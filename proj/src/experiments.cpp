#include "rggmst/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>

#include <json.hpp>

#include "rggmst/errors.hpp"
#include "rggmst/io.hpp"
#include "rggmst/mst.hpp"
#include "rggmst/rng.hpp"
#include "rggmst/sampling.hpp"
#include "rggmst/tiling.hpp"
#include "rggmst/trial_kernels.hpp"

namespace rggmst {

using nlohmann::json;

namespace {

constexpr std::uint64_t kMinScalingTrials = 100;
constexpr std::uint64_t kLemmaStream = 0x4c454d4dULL;

std::map<std::uint64_t, std::vector<const TrialRecord*>> by_n(std::span<const TrialRecord> records) {
  std::map<std::uint64_t, std::vector<const TrialRecord*>> groups;
  for (const auto& r : records) groups[r.n].push_back(&r);
  return groups;
}

SampleMoments moments(const std::vector<double>& xs) {
  RunningStats s;
  for (double x : xs) s.add(x);
  return {s.mean(), s.variance(), s.std_error()};
}

}  // namespace

std::vector<NSummary> summarize(std::span<const TrialRecord> records,
                                std::span<const SweepPoint> points) {
  std::vector<NSummary> out;
  for (const auto& [n, group] : by_n(records)) {
    NSummary s;
    s.n = n;
    s.trials = group.size();
    for (const auto& p : points) {
      if (p.n != n) continue;
      s.radius = p.radius.radius;
      s.a_eff = p.plan.a_eff;
      s.condition_i = p.radius.condition_i;
      s.l2_condition = p.radius.l2_condition;
      s.a_in_window = p.plan.a_in_window;
    }
    RunningStats st;
    std::uint64_t connected = 0;
    std::uint64_t poi = 0;
    std::uint64_t dense = 0;
    for (const auto* r : group) {
      st.add(r->scaled_mst);
      connected += r->connected;
      poi += r->e_poi;
      dense += r->e_dense;
      s.sandwich_checked += r->sandwich_checked;
      s.sandwich_violations += r->sandwich_checked && !r->sandwich_ok;
      s.lower_violations += !r->lower_ok;
      s.tuni_errors += r->tuni_error;
      s.wall_time += r->wall_time;
    }
    const double t = static_cast<double>(s.trials);
    s.mean = st.mean();
    s.variance = st.variance();
    s.std_error = st.std_error();
    s.connected_freq = static_cast<double>(connected) / t;
    s.e_poi_freq = static_cast<double>(poi) / t;
    s.e_dense_freq = static_cast<double>(dense) / t;
    out.push_back(s);
  }
  return out;
}

VarianceScalingReport variance_scaling_report(std::span<const TrialRecord> records,
                                              const ExperimentConfig& cfg) {
  VarianceScalingReport rep;
  std::vector<double> log_scale;
  std::vector<double> log_var;
  std::vector<double> ns;
  std::vector<double> ratios;
  std::size_t qualifying = 0;
  for (const auto& [n, group] : by_n(records)) {
    VarianceScalingPoint p;
    p.n = n;
    p.trials = group.size();
    p.radius = group.front()->radius;
    RunningStats st;
    for (const auto* r : group) st.add(r->scaled_mst);
    p.variance = st.variance();
    const double r2 = p.radius * p.radius;
    p.bound_scale = r2 * std::pow(static_cast<double>(n) * r2, cfg.alpha);
    p.ratio = p.variance / p.bound_scale;
    p.ratio_se = p.trials > 1 ? p.ratio * std::sqrt(2.0 / static_cast<double>(p.trials - 1)) : 0.0;
    if (p.trials >= kMinScalingTrials) ++qualifying;
    p.excluded = p.variance == 0.0 || p.trials < kMinScalingTrials;
    if (!p.excluded) {
      log_scale.push_back(std::log(p.bound_scale));
      log_var.push_back(std::log(p.variance));
      ns.push_back(static_cast<double>(n));
      ratios.push_back(p.ratio);
    }
    rep.points.push_back(p);
  }
  if (qualifying < 3) {
    throw ParameterError("variance scaling needs three n values with at least 100 trials each");
  }
  if (ns.size() >= 2) {
    rep.slope = least_squares(log_scale, log_var).slope;
    rep.spearman_rho = spearman_rho(ns, ratios);
    if (ns.size() <= 8) rep.p_value = spearman_upward_p_value(ns, ratios);
    rep.upward_trend = rep.p_value < 0.05;
  }
  return rep;
}

std::vector<DeviationRow> deviation_report(std::span<const TrialRecord> records,
                                           std::span<const Thresholds> thresholds) {
  std::vector<DeviationRow> out;
  for (const auto& [n, group] : by_n(records)) {
    const Thresholds* th = nullptr;
    for (const auto& t : thresholds) {
      if (t.n == static_cast<double>(n)) th = &t;
    }
    if (!th) throw ParameterError("no thresholds for n = " + std::to_string(n));
    DeviationRow row;
    row.n = n;
    row.trials = group.size();
    row.lower_vacuous = th->lower_vacuous;
    row.lower_threshold = th->lower;
    row.upper_threshold = th->upper;
    std::size_t above = 0;
    std::size_t below = 0;
    RunningStats st;
    for (const auto* r : group) {
      above += th->lower_vacuous || r->mst_total >= th->lower;
      below += r->mst_total <= th->upper;
      st.add(r->scaled_mst);
    }
    row.lower_freq = static_cast<double>(above) / static_cast<double>(row.trials);
    row.upper_freq = static_cast<double>(below) / static_cast<double>(row.trials);
    row.lower_ci = wilson_interval(above, row.trials);
    row.upper_ci = wilson_interval(below, row.trials);
    row.mean_scaled = st.mean();
    row.mean_se = st.std_error();
    row.mean_lower = th->mean_lower;
    row.mean_upper = th->mean_upper;
    row.mean_within = row.mean_scaled >= row.mean_lower && row.mean_scaled <= row.mean_upper;
    out.push_back(row);
  }
  return out;
}

SweepResult run_sweep(const ExperimentConfig& cfg, bool write_outputs) {
  cfg.validate();
  SweepResult result;
  for (auto n : cfg.n_values) result.points.push_back(prepare_sweep_point(cfg, n));

  const std::filesystem::path dir(cfg.output_dir);
  std::ofstream csv;
  if (write_outputs) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());
    csv.open(dir / "trials.csv", std::ios::binary | std::ios::trunc);
    if (!csv) throw IoError("cannot open " + (dir / "trials.csv").string());
    csv << trials_csv_header();
  }

  for (const auto& point : result.points) {
    auto batch = run_trials(cfg, point, 0, cfg.trials, cfg.workers);
    if (write_outputs) {
      for (const auto& r : batch) csv << trials_csv_row(r);
      csv.flush();
      if (!csv) throw IoError("failed writing trials.csv for n = " + std::to_string(point.n));
    }
    result.records.insert(result.records.end(), batch.begin(), batch.end());
  }
  std::stable_sort(result.records.begin(), result.records.end(),
                   [](const TrialRecord& a, const TrialRecord& b) {
                     return a.n != b.n ? a.n < b.n : a.trial_index < b.trial_index;
                   });

  result.summaries = summarize(result.records, result.points);
  std::size_t qualifying = 0;
  for (const auto& s : result.summaries) qualifying += s.trials >= kMinScalingTrials;
  if (qualifying >= 3) result.variance = variance_scaling_report(result.records, cfg);
  std::vector<Thresholds> th;
  for (const auto& p : result.points) th.push_back(p.thresholds);
  result.deviations = deviation_report(result.records, th);

  if (write_outputs) write_text(dir / "summary.json", summary_json(result, cfg));
  return result;
}

OneNodeReport one_node_difference_check(std::uint64_t n, const ExperimentConfig& cfg,
                                        std::uint64_t instances, std::uint64_t removals) {
  if (n < 3) throw ParameterError("one-node check needs n >= 3");
  cfg.validate();
  const std::uint64_t n1 = n + 1;
  const double nd = static_cast<double>(n1);
  OneNodeReport rep;
  rep.n = n;
  rep.radius = radius_for(nd, cfg.radius_rule, cfg.density.eps1(), cfg.alpha).radius;
  rep.instances = instances;
  rep.degree_cap = 200.0 * cfg.density.eps2() * nd * rep.radius * rep.radius;
  const TilingPlan plan = plan_tiling(nd, rep.radius, cfg.a_box);

  for (std::uint64_t inst = 0; inst < instances; ++inst) {
    Rng rng = Rng::stream(cfg.master_seed, kLemmaStream, n1, inst);
    PointSet ps = sample_binomial(n1, cfg.density, rng.split(0).seed());
    const OccupancyReport occ = occupancy(ps, plan, cfg.density);
    if (!occ.e_dense) continue;
    ++rep.dense_instances;
    const Rgg g = build_rgg(std::move(ps), rep.radius, cfg.weights);
    const MstResult full = minimum_spanning_forest(g);
    const auto deg = mst_degree_stats(full);
    rep.max_degree = std::max(rep.max_degree, deg.max_degree);
    rep.degree_violations += deg.max_degree > rep.degree_cap;

    // Partial Fisher-Yates for distinct removal indices.
    std::vector<std::size_t> perm(n1);
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    const std::size_t k = std::min<std::uint64_t>(removals, n1);
    for (std::size_t i = 0; i < k; ++i) std::swap(perm[i], perm[i + rng.below(n1 - i)]);
    perm.resize(k);

    for (const auto& out : evaluate_removals(g, full, perm, cfg.workers)) {
      ++rep.pairs;
      rep.violations += out.violated;
      rep.leaf_pairs += out.degree == 1;
      if (out.bound > 0.0) {
        rep.max_ratio =
            std::max(rep.max_ratio, std::abs(out.full_weight - out.reduced_weight) / out.bound);
      }
    }
  }
  return rep;
}

PoissonComparison poissonization_comparison(const ExperimentConfig& cfg, std::uint64_t n,
                                            std::uint64_t trials) {
  if (trials < 500) throw ParameterError("Poisson comparison needs at least 500 trials per model");
  PoissonComparison rep;
  rep.n = n;
  rep.trials = trials;

  ExperimentConfig bin = cfg;
  bin.process = Process::Binomial;
  ExperimentConfig poi = cfg;
  poi.process = Process::Poisson;
  const SweepPoint point = prepare_sweep_point(bin, n);

  for (const auto& r : run_trials(bin, point, 0, trials, cfg.workers)) {
    rep.binomial_scaled.push_back(r.scaled_mst);
  }
  for (const auto& r : run_trials(poi, point, 0, trials, cfg.workers)) {
    rep.poisson_scaled.push_back(r.scaled_mst);
    rep.count_at_n += r.node_count == n;
  }
  rep.binomial = moments(rep.binomial_scaled);
  rep.poisson = moments(rep.poisson_scaled);
  rep.mean_diff = rep.poisson.mean - rep.binomial.mean;
  rep.pooled_se = std::hypot(rep.binomial.std_error, rep.poisson.std_error);
  rep.means_agree = std::abs(rep.mean_diff) <= 3.0 * rep.pooled_se;
  rep.ks = ks_statistic(rep.binomial_scaled, rep.poisson_scaled);

  const double nd = static_cast<double>(n);
  const double t = static_cast<double>(trials);
  rep.freq_at_n = static_cast<double>(rep.count_at_n) / t;
  rep.stirling = 1.0 / std::sqrt(2.0 * std::numbers::pi * nd);
  rep.exact_pmf = std::exp(nd * std::log(nd) - nd - std::lgamma(nd + 1.0));
  rep.freq_sigma = std::sqrt(rep.stirling * (1.0 - rep.stirling) / t);
  rep.freq_agrees = std::abs(rep.freq_at_n - rep.stirling) <= 3.0 * rep.freq_sigma;
  return rep;
}

std::string summary_json(const SweepResult& result, const ExperimentConfig& cfg) {
  json j;
  j["alpha"] = cfg.alpha;
  j["master_seed"] = cfg.master_seed;
  j["trials"] = cfg.trials;
  j["workers"] = cfg.workers;
  json per_n = json::array();
  for (const auto& s : result.summaries) {
    per_n.push_back({{"n", s.n},
                     {"trials", s.trials},
                     {"radius", s.radius},
                     {"A_eff", s.a_eff},
                     {"condition_i", s.condition_i},
                     {"l2_condition", s.l2_condition},
                     {"A_in_window", s.a_in_window},
                     {"mean_scaled_mst", s.mean},
                     {"var_scaled_mst", s.variance},
                     {"se_scaled_mst", s.std_error},
                     {"connected_freq", s.connected_freq},
                     {"e_poi_freq", s.e_poi_freq},
                     {"e_dense_freq", s.e_dense_freq},
                     {"sandwich_checked", s.sandwich_checked},
                     {"sandwich_violations", s.sandwich_violations},
                     {"lower_violations", s.lower_violations},
                     {"tuni_errors", s.tuni_errors},
                     {"wall_time", s.wall_time}});
  }
  j["per_n"] = per_n;
  json dev = json::array();
  for (const auto& d : result.deviations) {
    dev.push_back({{"n", d.n},
                   {"lower_vacuous", d.lower_vacuous},
                   {"lower_threshold", d.lower_threshold},
                   {"upper_threshold", d.upper_threshold},
                   {"lower_freq", d.lower_freq},
                   {"lower_ci", {d.lower_ci.lo, d.lower_ci.hi}},
                   {"upper_freq", d.upper_freq},
                   {"upper_ci", {d.upper_ci.lo, d.upper_ci.hi}},
                   {"mean_scaled_mst", d.mean_scaled},
                   {"mean_bounds", {d.mean_lower, d.mean_upper}},
                   {"mean_within", d.mean_within}});
  }
  j["deviation"] = dev;
  if (result.variance) {
    const auto& v = *result.variance;
    json pts = json::array();
    for (const auto& p : v.points) {
      pts.push_back({{"n", p.n},
                     {"variance", p.variance},
                     {"bound_scale", p.bound_scale},
                     {"ratio", p.ratio},
                     {"ratio_se", p.ratio_se},
                     {"excluded", p.excluded}});
    }
    j["variance_scaling"] = {{"points", pts},
                             {"slope", v.slope},
                             {"spearman_rho", v.spearman_rho},
                             {"p_value", v.p_value},
                             {"upward_trend", v.upward_trend}};
  }
  return j.dump(2) + "\n";
}

std::string one_node_json(const OneNodeReport& r) {
  json j{{"n", r.n},
         {"radius", r.radius},
         {"instances", r.instances},
         {"dense_instances", r.dense_instances},
         {"pairs", r.pairs},
         {"violations", r.violations},
         {"leaf_pairs", r.leaf_pairs},
         {"max_ratio", r.max_ratio},
         {"max_degree", r.max_degree},
         {"degree_cap", r.degree_cap},
         {"degree_violations", r.degree_violations}};
  return j.dump(2) + "\n";
}

std::string poisson_json(const PoissonComparison& r) {
  auto m = [](const SampleMoments& s) {
    return json{{"mean", s.mean}, {"variance", s.variance}, {"std_error", s.std_error}};
  };
  json j{{"n", r.n},
         {"trials", r.trials},
         {"binomial", m(r.binomial)},
         {"poisson", m(r.poisson)},
         {"mean_diff", r.mean_diff},
         {"pooled_se", r.pooled_se},
         {"means_agree", r.means_agree},
         {"ks", r.ks},
         {"count_at_n", r.count_at_n},
         {"freq_at_n", r.freq_at_n},
         {"stirling", r.stirling},
         {"exact_pmf", r.exact_pmf},
         {"freq_sigma", r.freq_sigma},
         {"freq_agrees", r.freq_agrees}};
  return j.dump(2) + "\n";
}

}  // namespace rggmst
