#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rggmst/cli.hpp"

using namespace rggmst;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli_run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_config(const std::string& name, const fs::path& out_dir) {
  const auto path = fs::temp_directory_path() / name;
  std::ofstream(path) << R"({"n_values": [200, 300], "radius_rule": "power", "radius_value": 1.0,
    "radius_exponent": 0.3333333333333333, "trials": 6, "master_seed": 3, "output_dir": ")"
                      << out_dir.string() << "\"}\n";
  return path;
}

}  // namespace

TEST_CASE("bounds prints homogeneous optima") {
  const auto r = run({"bounds", "--homogeneous", "--alpha", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("beta_low = 0.0735633") != std::string::npos);
  CHECK(r.out.find("beta_up = 4.46256") != std::string::npos);

  const auto dir = fs::temp_directory_path() / "rggmst_cli_bounds";
  fs::remove_all(dir);
  const auto w = run({"bounds", "--homogeneous", "--points", "5", "--out", dir.string()});
  REQUIRE(w.code == 0);
  const auto csv = slurp(dir / "bounds.csv");
  CHECK(csv.rfind("A,C1,C2\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(fs::exists(dir / "bounds.json"));
}

TEST_CASE("bad invocations fail without writing") {
  const auto dir = fs::temp_directory_path() / "rggmst_cli_missing_out";
  fs::remove_all(dir);
  const auto missing = run({"sweep", "--config", "/nonexistent/rggmst.json", "--out", dir.string()});
  CHECK(missing.code != 0);
  CHECK(missing.err.find("error") != std::string::npos);
  CHECK_FALSE(fs::exists(dir));

  CHECK(run({"bounds", "--bogus"}).code != 0);
  CHECK(run({"frobnicate"}).code != 0);
  CHECK(run({}).code != 0);
  CHECK(run({"sweep"}).code != 0);
  CHECK(run({"bounds", "--alpha", "-1"}).code != 0);
}

TEST_CASE("sweep twice gives identical files, then plot-data") {
  const auto dir = fs::temp_directory_path() / "rggmst_cli_sweep";
  fs::remove_all(dir);
  const auto cfg = write_config("rggmst_cli_sweep.json", dir);
  REQUIRE(run({"sweep", "--config", cfg.string()}).code == 0);
  const auto first = slurp(dir / "trials.csv");
  const auto first_summary = slurp(dir / "summary.json");
  REQUIRE(run({"sweep", "--config", cfg.string(), "--workers", "3"}).code == 0);
  CHECK(first == slurp(dir / "trials.csv"));
  CHECK(first_summary.size() > 0);
  CHECK(std::count(first.begin(), first.end(), '\n') == 1 + 2 * 6);

  const auto plot = run({"plot-data", "--config", cfg.string()});
  REQUIRE(plot.code == 0);
  const auto csv = slurp(dir / "plot_data.csv");
  CHECK(csv.rfind("x,y,series\n", 0) == 0);
  CHECK(csv.find("mean_scaled_mst") != std::string::npos);
}

TEST_CASE("check-lemma and compare-poisson") {
  const auto dir = fs::temp_directory_path() / "rggmst_cli_lemma";
  fs::remove_all(dir);
  const auto cfg = write_config("rggmst_cli_lemma.json", dir);
  const auto lemma = run({"check-lemma", "--config", cfg.string(), "--trials", "3", "--removals",
                          "4", "--out", dir.string()});
  CHECK(lemma.code == 0);
  CHECK(fs::exists(dir / "lemma.json"));
  const auto poi = run({"compare-poisson", "--config", cfg.string(), "--trials", "500", "--n", "100"});
  CHECK(poi.code == 0);
  CHECK(poi.out.find("\"ks\"") != std::string::npos);
}

TEST_CASE("standalone binary") {
  const std::string exe = RGGMST_CLI_PATH;
  const auto log = fs::temp_directory_path() / "rggmst_cli_binary.txt";
  const int ok = std::system((exe + " bounds --homogeneous > " + log.string()).c_str());
  CHECK(ok == 0);
  CHECK(slurp(log).find("0.0735633") != std::string::npos);
  const int bad = std::system((exe + " bounds --nope > /dev/null 2>&1").c_str());
  CHECK(bad != 0);
}
