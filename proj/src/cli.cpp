#include "rggmst/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rggmst/bounds.hpp"
#include "rggmst/config.hpp"
#include "rggmst/errors.hpp"
#include "rggmst/experiments.hpp"
#include "rggmst/io.hpp"

namespace rggmst {

namespace {

namespace fs = std::filesystem;

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out;
  std::vector<std::uint64_t> n;
  std::optional<double> alpha;
  std::optional<std::uint64_t> trials;
};

void add_common(CLI::App* cmd, Overrides& o, bool config_required) {
  auto* c = cmd->add_option("--config", o.config, "JSON config file");
  if (config_required) c->required();
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--workers", o.workers, "parallel workers")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--n", o.n, "node count(s)");
  cmd->add_option("--alpha", o.alpha, "path-length exponent")->check(CLI::PositiveNumber);
  cmd->add_option("--trials", o.trials, "trials per n")->check(CLI::PositiveNumber);
}

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig cfg = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
  if (o.alpha) cfg = cfg.with_alpha(*o.alpha);
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.workers) cfg.workers = *o.workers;
  if (o.out) cfg.output_dir = *o.out;
  if (!o.n.empty()) cfg.n_values = o.n;
  if (o.trials) cfg.trials = *o.trials;
  cfg.validate();
  return cfg;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());
}

int do_sweep(const Overrides& o, std::ostream& out) {
  const ExperimentConfig cfg = resolve(o);
  const auto result = run_sweep(cfg, true);
  out << "n,trials,radius,A_eff,mean_scaled_mst,var_scaled_mst,connected,e_poi,e_dense,"
         "sandwich_violations\n";
  for (const auto& s : result.summaries) {
    out << s.n << ',' << s.trials << ',' << format_double(s.radius) << ','
        << format_double(s.a_eff) << ',' << format_double(s.mean) << ','
        << format_double(s.variance) << ',' << s.connected_freq << ',' << s.e_poi_freq << ','
        << s.e_dense_freq << ',' << s.sandwich_violations << '\n';
  }
  if (result.variance) {
    out << "variance slope " << result.variance->slope << ", spearman rho "
        << result.variance->spearman_rho << ", p " << result.variance->p_value
        << (result.variance->upward_trend ? " (upward trend)" : " (no upward trend)") << '\n';
  }
  out << "wrote " << (fs::path(cfg.output_dir) / "trials.csv").string() << '\n';
  return 0;
}

int do_bounds(const Overrides& o, bool homogeneous, double tol, double a_lo, double a_hi,
              std::size_t points, std::ostream& out) {
  BoundParams params;
  if (homogeneous) {
    params = BoundParams::homogeneous(o.alpha.value_or(1.0));
  } else {
    params = resolve(o).bound_params();
  }
  params.validate();
  const auto beta = optimize_betas(params, tol);
  out << "beta_low = " << fixed(beta.beta_low, 7) << " at A = " << fixed(beta.argmax, 6) << '\n';
  out << "beta_up = " << fixed(beta.beta_up, 5) << " at A = " << fixed(beta.argmin, 6) << '\n';
  if (beta.multimodal_low || beta.multimodal_up) out << "warning: multimodal objective\n";
  if (o.out) {
    const fs::path dir(*o.out);
    ensure_dir(dir);
    const auto rows = bounds_table(params, a_lo, a_hi, points);
    write_bounds_csv(rows, dir / "bounds.csv");
    write_text(dir / "bounds.json", beta_json(beta, params));
    out << "wrote " << (dir / "bounds.csv").string() << '\n';
  }
  return 0;
}

int do_check_lemma(const Overrides& o, std::uint64_t removals, std::ostream& out) {
  const ExperimentConfig cfg = resolve(o);
  const std::uint64_t instances = o.trials.value_or(cfg.trials);
  const auto rep = one_node_difference_check(cfg.n_values.front(), cfg, instances,
                                             removals ? removals : cfg.lemma_removals);
  out << one_node_json(rep);
  if (o.out) {
    ensure_dir(cfg.output_dir);
    write_text(fs::path(cfg.output_dir) / "lemma.json", one_node_json(rep));
  }
  return rep.violations == 0 ? 0 : 3;
}

int do_compare_poisson(const Overrides& o, std::ostream& out) {
  const ExperimentConfig cfg = resolve(o);
  const auto rep = poissonization_comparison(cfg, cfg.n_values.front(), cfg.trials);
  out << poisson_json(rep);
  if (o.out) {
    ensure_dir(cfg.output_dir);
    write_text(fs::path(cfg.output_dir) / "poisson.json", poisson_json(rep));
  }
  return 0;
}

int do_plot_data(const Overrides& o, std::ostream& out) {
  const ExperimentConfig cfg = resolve(o);
  const fs::path dir(cfg.output_dir);
  std::ostringstream csv;
  csv << "x,y,series\n";
  const fs::path summary = dir / "summary.json";
  if (fs::exists(summary)) {
    std::ifstream in(summary);
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw IoError("cannot parse " + summary.string());
    for (const auto& s : j.value("per_n", nlohmann::json::array())) {
      const auto n = format_double(s["n"].get<double>());
      csv << n << ',' << format_double(s["mean_scaled_mst"].get<double>()) << ",mean_scaled_mst\n";
    }
    for (const auto& d : j.value("deviation", nlohmann::json::array())) {
      const auto n = format_double(d["n"].get<double>());
      csv << n << ',' << format_double(d["lower_freq"].get<double>()) << ",lower_freq\n";
      csv << n << ',' << format_double(d["upper_freq"].get<double>()) << ",upper_freq\n";
    }
    if (j.contains("variance_scaling")) {
      for (const auto& p : j["variance_scaling"]["points"]) {
        const auto n = format_double(p["n"].get<double>());
        csv << n << ',' << format_double(p["variance"].get<double>()) << ",variance\n";
        csv << n << ',' << format_double(p["bound_scale"].get<double>()) << ",bound_scale\n";
        csv << n << ',' << format_double(p["ratio"].get<double>()) << ",variance_ratio\n";
      }
    }
  } else {
    out << "no summary.json in " << dir.string() << "; emitting C1/C2 curves only\n";
  }
  for (const auto& row : bounds_table(cfg.bound_params(), 0.05, 3.0, 300)) {
    csv << format_double(row.a) << ',' << format_double(row.c1) << ",C1\n";
    csv << format_double(row.a) << ',' << format_double(row.c2) << ",C2\n";
  }
  ensure_dir(dir);
  write_text(dir / "plot_data.csv", csv.str());
  out << "wrote " << (dir / "plot_data.csv").string() << '\n';
  return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random geometric graph MST experiments"};
  app.require_subcommand(1);

  Overrides sweep_o;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over n; writes trials.csv and summary.json");
  add_common(sweep, sweep_o, true);

  Overrides bounds_o;
  bool homogeneous = false;
  double tol = 1e-8;
  double a_lo = 0.05;
  double a_hi = 3.0;
  std::size_t points = 300;
  auto* bounds = app.add_subcommand("bounds", "Optimise C1 and C2 over A; optional bounds.csv");
  add_common(bounds, bounds_o, false);
  bounds->add_flag("--homogeneous", homogeneous, "eps1 = eps2 = xi = 1");
  bounds->add_option("--tol", tol, "argument tolerance")->check(CLI::PositiveNumber);
  bounds->add_option("--a-lo", a_lo, "table start")->check(CLI::PositiveNumber);
  bounds->add_option("--a-hi", a_hi, "table end")->check(CLI::PositiveNumber);
  bounds->add_option("--points", points, "table rows")->check(CLI::Range(2, 1000000));

  Overrides lemma_o;
  std::uint64_t removals = 0;
  auto* lemma = app.add_subcommand("check-lemma", "One-node removal check on e_dense instances");
  add_common(lemma, lemma_o, true);
  lemma->add_option("--removals", removals, "removed nodes per instance");

  Overrides poisson_o;
  auto* poisson = app.add_subcommand("compare-poisson", "Binomial against Poisson sampling");
  add_common(poisson, poisson_o, true);

  Overrides plot_o;
  auto* plot = app.add_subcommand("plot-data", "Tidy x,y,series CSV for plotting");
  add_common(plot, plot_o, true);

  std::vector<std::string> storage{"rggmst"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
  }

  try {
    if (sweep->parsed()) return do_sweep(sweep_o, out);
    if (bounds->parsed()) return do_bounds(bounds_o, homogeneous, tol, a_lo, a_hi, points, out);
    if (lemma->parsed()) return do_check_lemma(lemma_o, removals, out);
    if (poisson->parsed()) return do_compare_poisson(poisson_o, out);
    if (plot->parsed()) return do_plot_data(plot_o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_run(args, std::cout, std::cerr);
}

}  // namespace rggmst
