#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rggmst/config.hpp"
#include "rggmst/errors.hpp"
#include "rggmst/io.hpp"
#include "rggmst/mst.hpp"

using namespace rggmst;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "rggmst_test_config_io";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config round trip") {
  ExperimentConfig cfg;
  cfg.n_values = {100, 2000};
  cfg.radius_rule = {RadiusRule::Kind::LogScale, 3.5, 0.25};
  cfg.alpha = 1.5;
  cfg.process = Process::Poisson;
  cfg.density = DensitySpec::piecewise(2, {1.5, 0.5, 1.5, 0.5}, 0.5, 1.5);
  cfg.weights = WeightSpec::from_cell_factors(1.5, 2, {1.0, 2.0, 1.0, 2.0}, 1.0, 2.0);
  cfg.delta_rule = DeltaRule::Coupling;
  cfg.a_box = 0.75;
  cfg.trials = 17;
  cfg.master_seed = 123456789012345ULL;
  cfg.workers = 3;
  cfg.output_dir = "somewhere/else";
  cfg.lemma_removals = 4;

  const auto text = config_to_json(cfg);
  const auto back = config_from_json(text);
  CHECK(config_to_json(back) == text);
  CHECK(back.n_values == cfg.n_values);
  CHECK(back.radius_rule.kind == RadiusRule::Kind::LogScale);
  CHECK(back.radius_rule.value == 3.5);
  CHECK(back.process == Process::Poisson);
  CHECK(back.density.cells() == cfg.density.cells());
  CHECK(back.weights.table() == cfg.weights.table());
  CHECK(back.delta_rule == DeltaRule::Coupling);
  CHECK(back.master_seed == cfg.master_seed);
  CHECK(back.output_dir == cfg.output_dir);

  const auto path = scratch("cfg.json");
  save_config(cfg, path);
  CHECK(config_to_json(load_config(path)) == text);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(load_config("/nonexistent/missing.toml"), ConfigError);
  CHECK_THROWS_AS(config_from_json("not json"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"trials": 0})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"n_values": [1]})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"radius_rule": "other"})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"trials": "many"})"), ConfigError);
  const auto minimal = config_from_json(R"({"alpha": 2.0, "xi": 1.5})");
  CHECK(minimal.weights.alpha() == 2.0);
  CHECK(minimal.weights.xi_max() == 1.5);
  CHECK(minimal.with_alpha(0.5).weights.alpha() == 0.5);
}

TEST_CASE("csv and json dumps") {
  PointSet ps;
  ps.points = {{0.1, 0.5}, {0.2, 0.5}, {0.3, 0.5}};
  const auto g = build_rgg(ps, 0.15, WeightSpec::constant(1.0));
  const auto m = minimum_spanning_forest(g);
  write_points_csv(g.point_set(), scratch("points.csv"));
  write_edges_csv(g, scratch("edges.csv"));
  write_mst_csv(m, scratch("mst.csv"));
  CHECK(slurp(scratch("points.csv")).rfind("x,y,color\n0.10000000000000001,0.5,none\n", 0) == 0);
  CHECK(slurp(scratch("edges.csv")).rfind("i,j,dist,weight\n0,1,", 0) == 0);
  const auto mst = nlohmann::json::parse(mst_json(m));
  CHECK(mst["edges"] == 2);
  CHECK(mst["max_degree"] == 2);

  const auto plan = plan_tiling(1e6, 0.01, 1.0);
  const auto pj = nlohmann::json::parse(plan_json(plan));
  CHECK(pj["W"] == 293);
  const auto oj = nlohmann::json::parse(occupancy_json(occupancy(ps, plan, DensitySpec::uniform())));
  CHECK(oj["occupied"] == 3);

  const std::vector<BoundsRow> rows{{1.0, 0.5, 2.0}};
  write_bounds_csv(rows, scratch("bounds.csv"));
  CHECK(slurp(scratch("bounds.csv")) == "A,C1,C2\n1,0.5,2\n");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK_THROWS_AS(write_text("/nonexistent-dir/x.csv", "x"), IoError);

  TrialRecord r;
  r.n = 10;
  r.connected = true;
  const auto row = trials_csv_row(r);
  const auto header = trials_csv_header();
  CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
}
