#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rggmst/errors.hpp"
#include "rggmst/experiments.hpp"
#include "rggmst/mst.hpp"
#include "rggmst/sampling.hpp"
#include "rggmst/trial_kernels.hpp"

using namespace rggmst;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig small_config(const std::string& dir) {
  ExperimentConfig cfg;
  cfg.n_values = {200, 400};
  cfg.radius_rule = {RadiusRule::Kind::Power, 1.0, 1.0 / 3.0};
  cfg.trials = 12;
  cfg.master_seed = 99;
  cfg.output_dir = (fs::temp_directory_path() / dir).string();
  return cfg;
}

}  // namespace

TEST_CASE("single tiny trial matches brute force") {
  ExperimentConfig cfg;
  cfg.n_values = {10};
  cfg.radius_rule = {RadiusRule::Kind::Constant, 0.9};
  cfg.trials = 1;
  const auto res = run_sweep(cfg, false);
  REQUIRE(res.records.size() == 1);
  const auto& rec = res.records[0];
  const auto ps = sample_binomial(10, cfg.density, trial_seed(cfg.master_seed, 10, 0, cfg.process));
  const auto g = build_rgg(ps, 0.9, cfg.weights);
  CHECK(rec.mst_total == brute_force_mst(g).total_weight);
  CHECK(rec.scaled_mst == rec.mst_total * std::pow(10.0, -0.5));
}

TEST_CASE("sweep output is reproducible and independent of workers") {
  auto a = small_config("rggmst_exp_a");
  auto b = small_config("rggmst_exp_b");
  b.workers = 3;
  run_sweep(a);
  run_sweep(b);
  const auto ta = slurp(fs::path(a.output_dir) / "trials.csv");
  CHECK(ta == slurp(fs::path(b.output_dir) / "trials.csv"));
  CHECK(fs::exists(fs::path(a.output_dir) / "summary.json"));
  run_sweep(a);
  CHECK(ta == slurp(fs::path(a.output_dir) / "trials.csv"));
  CHECK(ta.rfind("n,trial,nodes,", 0) == 0);

  const auto point = prepare_sweep_point(a, 300);
  const auto par = run_trials(a, point, 5, 9, 4);
  const auto ser = reference::run_trials_serial(a, point, 5, 9);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].trial_index == ser[i].trial_index);
    CHECK(par[i].mst_total == ser[i].mst_total);
    CHECK(par[i].y_alpha == ser[i].y_alpha);
  }
}

TEST_CASE("sweep reports I/O failure") {
  auto cfg = small_config("rggmst_exp_io");
  fs::create_directories(fs::temp_directory_path());
  const auto blocker = fs::temp_directory_path() / "rggmst_exp_blocker";
  std::ofstream(blocker) << "file, not a directory";
  cfg.output_dir = (blocker / "sub").string();
  CHECK_THROWS_AS(run_sweep(cfg), IoError);
}

TEST_CASE("variance scaling report") {
  ExperimentConfig cfg;
  std::vector<TrialRecord> recs;
  for (std::uint64_t n : {100, 200, 400}) {
    for (std::uint64_t t = 0; t < 100; ++t) {
      TrialRecord r;
      r.n = n;
      r.trial_index = t;
      r.radius = std::pow(static_cast<double>(n), -1.0 / 3.0);
      r.scaled_mst = n == 400 ? 2.0 : 1.0 + 0.01 * static_cast<double>(t % 7);
      recs.push_back(r);
    }
  }
  const auto rep = variance_scaling_report(recs, cfg);
  REQUIRE(rep.points.size() == 3);
  CHECK_FALSE(rep.points[0].excluded);
  CHECK(rep.points[2].excluded);
  CHECK(rep.points[2].variance == 0.0);
  CHECK(rep.points[0].bound_scale == doctest::Approx(std::pow(100.0, -1.0 / 3.0)).epsilon(1e-12));

  recs.resize(150);
  CHECK_THROWS_AS(variance_scaling_report(recs, cfg), ParameterError);
}

TEST_CASE("variance ratio is stable when trials double") {
  ExperimentConfig cfg;
  cfg.n_values = {300, 600, 1200};
  cfg.trials = 200;
  const auto half = run_sweep(cfg, false);
  cfg.trials = 400;
  const auto full = run_sweep(cfg, false);
  REQUIRE(half.variance);
  REQUIRE(full.variance);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& h = half.variance->points[i];
    const auto& f = full.variance->points[i];
    CHECK(std::abs(h.ratio - f.ratio) <= 2.0 * 3.0 * h.ratio_se);
  }
}

TEST_CASE("deviation report") {
  Thresholds vac;
  vac.n = 50;
  vac.lower_vacuous = true;
  vac.upper = 1.0;
  std::vector<TrialRecord> recs(4);
  for (auto& r : recs) {
    r.n = 50;
    r.mst_total = 0.5;
  }
  recs[3].mst_total = 3.0;
  const auto rows = deviation_report(recs, std::vector<Thresholds>{vac});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].lower_freq == 1.0);
  CHECK(rows[0].upper_freq == 0.75);
  CHECK(rows[0].upper_ci.lo < 0.75);
  CHECK_THROWS_AS(deviation_report(recs, std::vector<Thresholds>{}), ParameterError);
}

TEST_CASE("one-node difference") {
  ExperimentConfig cfg;
  cfg.radius_rule = {RadiusRule::Kind::Constant, 0.8};
  cfg.master_seed = 5;
  const auto rep = one_node_difference_check(300, cfg, 6, 8);
  CHECK(rep.dense_instances > 0);
  CHECK(rep.pairs == 8 * rep.dense_instances);
  CHECK(rep.violations == 0);
  CHECK(rep.max_ratio <= 1.0 + 1e-12);
  CHECK(rep.degree_violations == 0);
  CHECK_THROWS_AS(one_node_difference_check(2, cfg, 1, 1), ParameterError);

  // Removing a leaf changes the forest by at most one edge weight.
  const auto ps = sample_binomial(200, DensitySpec::uniform(), 3);
  const auto g = build_rgg(ps, 0.3, WeightSpec::constant(1.0));
  const auto m = minimum_spanning_forest(g);
  std::vector<std::size_t> leaves;
  for (std::size_t v = 0; v < m.degrees.size() && leaves.size() < 5; ++v) {
    if (m.degrees[v] == 1) leaves.push_back(v);
  }
  REQUIRE_FALSE(leaves.empty());
  const auto par = evaluate_removals(g, m, leaves, 2);
  const auto ser = reference::evaluate_removals_serial(g, m, leaves);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    CHECK_FALSE(par[i].violated);
    CHECK(par[i].reduced_weight == ser[i].reduced_weight);
    CHECK(par[i].full_weight - par[i].reduced_weight <= 0.3 + 1e-12);
  }
}

TEST_CASE("Poisson comparison") {
  ExperimentConfig cfg;
  cfg.radius_rule = {RadiusRule::Kind::Power, 1.0, 1.0 / 3.0};
  const auto rep = poissonization_comparison(cfg, 150, 500);
  CHECK(rep.binomial_scaled.size() == 500);
  CHECK(rep.stirling == doctest::Approx(1.0 / std::sqrt(2.0 * 3.141592653589793 * 150)));
  CHECK(rep.exact_pmf == doctest::Approx(rep.stirling).epsilon(1e-3));
  CHECK(rep.ks >= 0.0);
  CHECK(rep.ks <= 1.0);
  const auto again = poissonization_comparison(cfg, 150, 500);
  CHECK(again.binomial_scaled == rep.binomial_scaled);
  CHECK_THROWS_AS(poissonization_comparison(cfg, 150, 100), ParameterError);
}
