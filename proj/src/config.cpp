#include "rggmst/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rggmst/errors.hpp"

namespace rggmst {

using nlohmann::json;

namespace {

const char* radius_kind_name(RadiusRule::Kind k) {
  switch (k) {
    case RadiusRule::Kind::Theorem: return "theorem";
    case RadiusRule::Kind::LogScale: return "log_scale";
    case RadiusRule::Kind::Power: return "power";
    case RadiusRule::Kind::Constant: return "constant";
  }
  return "power";
}

RadiusRule::Kind radius_kind_from(const std::string& s) {
  if (s == "theorem") return RadiusRule::Kind::Theorem;
  if (s == "log_scale") return RadiusRule::Kind::LogScale;
  if (s == "power") return RadiusRule::Kind::Power;
  if (s == "constant") return RadiusRule::Kind::Constant;
  throw ConfigError("unknown radius_rule '" + s + "'");
}

const char* density_kind_name(DensitySpec::Kind k) {
  switch (k) {
    case DensitySpec::Kind::Uniform: return "uniform";
    case DensitySpec::Kind::Piecewise: return "piecewise";
    case DensitySpec::Kind::Tabulated: return "tabulated";
  }
  return "uniform";
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "n_values",     "radius_rule",  "radius_value", "radius_exponent", "alpha",
      "process",      "density",      "density_eps1", "density_eps2",    "density_k",
      "density_cells", "xi",          "xi_grid",      "xi_table",        "xi_factors",
      "xi_min",       "xi_max",       "delta_rule",   "A",               "trials",
      "master_seed",  "workers",      "output_dir",   "lemma_removals"};
  return keys;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (n_values.empty()) throw ConfigError("n_values must not be empty");
  for (auto n : n_values) {
    if (n < 2) throw ConfigError("every n must be >= 2");
  }
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (weights.alpha() != alpha) throw ConfigError("weight alpha differs from alpha");
  if (!(a_box > 0.0)) throw ConfigError("A must be positive");
}

ExperimentConfig ExperimentConfig::with_alpha(double a) const {
  ExperimentConfig out = *this;
  out.alpha = a;
  if (weights.is_constant()) {
    out.weights = WeightSpec::constant(a, weights.xi_min());
  } else {
    out.weights = WeightSpec::tabulated(a, weights.resolution(), weights.table(),
                                        weights.xi_min(), weights.xi_max());
  }
  return out;
}

BoundParams ExperimentConfig::bound_params() const {
  BoundParams p;
  p.eps1 = density.eps1();
  p.eps2 = density.eps2();
  p.xi_min = weights.xi_min();
  p.xi_max = weights.xi_max();
  p.alpha = alpha;
  p.delta_rule = delta_rule;
  return p;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["n_values"] = cfg.n_values;
  j["radius_rule"] = radius_kind_name(cfg.radius_rule.kind);
  j["radius_value"] = cfg.radius_rule.value;
  j["radius_exponent"] = cfg.radius_rule.exponent;
  j["alpha"] = cfg.alpha;
  j["process"] = cfg.process == Process::Poisson ? "poisson" : "binomial";
  j["density"] = density_kind_name(cfg.density.kind());
  j["density_eps1"] = cfg.density.eps1();
  j["density_eps2"] = cfg.density.eps2();
  if (cfg.density.kind() != DensitySpec::Kind::Uniform) {
    j["density_k"] = cfg.density.resolution();
    j["density_cells"] = cfg.density.cells();
  }
  if (cfg.weights.is_constant()) {
    j["xi"] = cfg.weights.xi_min();
  } else {
    j["xi_grid"] = cfg.weights.resolution();
    j["xi_table"] = cfg.weights.table();
  }
  j["xi_min"] = cfg.weights.xi_min();
  j["xi_max"] = cfg.weights.xi_max();
  j["delta_rule"] = cfg.delta_rule == DeltaRule::Stated ? "stated" : "coupling";
  j["A"] = cfg.a_box;
  j["trials"] = cfg.trials;
  j["master_seed"] = cfg.master_seed;
  j["workers"] = cfg.workers;
  j["output_dir"] = cfg.output_dir;
  j["lemma_removals"] = cfg.lemma_removals;
  return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& item : j.items()) {
    if (!known_keys().count(item.key())) throw ConfigError("unknown config key '" + item.key() + "'");
  }

  ExperimentConfig cfg;
  cfg.n_values = get_or(j, "n_values", cfg.n_values);
  cfg.radius_rule.kind =
      radius_kind_from(get_or<std::string>(j, "radius_rule", radius_kind_name(cfg.radius_rule.kind)));
  cfg.radius_rule.value = get_or(j, "radius_value", cfg.radius_rule.value);
  cfg.radius_rule.exponent = get_or(j, "radius_exponent", cfg.radius_rule.exponent);
  cfg.alpha = get_or(j, "alpha", cfg.alpha);

  const auto process = get_or<std::string>(j, "process", "binomial");
  if (process == "binomial") {
    cfg.process = Process::Binomial;
  } else if (process == "poisson") {
    cfg.process = Process::Poisson;
  } else {
    throw ConfigError("unknown process '" + process + "'");
  }

  const double eps1 = get_or(j, "density_eps1", 1.0);
  const double eps2 = get_or(j, "density_eps2", 1.0);
  const auto density = get_or<std::string>(j, "density", "uniform");
  if (density == "uniform") {
    if (!(eps1 > 0.0 && eps1 <= 1.0 && eps2 >= 1.0)) {
      throw ConfigError("uniform density needs 0 < eps1 <= 1 <= eps2");
    }
    cfg.density = DensitySpec::uniform(eps1, eps2);
  } else if (density == "piecewise" || density == "tabulated") {
    const auto k = get_or<std::size_t>(j, "density_k", 0);
    auto cells = get_or<std::vector<double>>(j, "density_cells", {});
    cfg.density = DensitySpec::piecewise(
        k, std::move(cells), eps1, eps2,
        density == "piecewise" ? DensitySpec::Kind::Piecewise : DensitySpec::Kind::Tabulated);
  } else {
    throw ConfigError("unknown density '" + density + "'");
  }

  if (j.contains("xi_table") || j.contains("xi_factors")) {
    const auto g = get_or<std::size_t>(j, "xi_grid", 0);
    const double lo = get_or(j, "xi_min", 0.0);
    const double hi = get_or(j, "xi_max", 0.0);
    if (j.contains("xi_table")) {
      cfg.weights = WeightSpec::tabulated(cfg.alpha, g, get_or<std::vector<double>>(j, "xi_table", {}),
                                          lo, hi);
    } else {
      cfg.weights = WeightSpec::from_cell_factors(
          cfg.alpha, g, get_or<std::vector<double>>(j, "xi_factors", {}), lo, hi);
    }
  } else {
    const double xi = get_or(j, "xi", 1.0);
    if (!(xi > 0.0)) throw ConfigError("xi must be positive");
    cfg.weights = WeightSpec::constant(cfg.alpha, xi);
  }

  const auto rule = get_or<std::string>(j, "delta_rule", "stated");
  if (rule == "stated") {
    cfg.delta_rule = DeltaRule::Stated;
  } else if (rule == "coupling") {
    cfg.delta_rule = DeltaRule::Coupling;
  } else {
    throw ConfigError("unknown delta_rule '" + rule + "'");
  }

  cfg.a_box = get_or(j, "A", cfg.a_box);
  cfg.trials = get_or(j, "trials", cfg.trials);
  cfg.master_seed = get_or(j, "master_seed", cfg.master_seed);
  cfg.workers = get_or(j, "workers", cfg.workers);
  cfg.output_dir = get_or(j, "output_dir", cfg.output_dir);
  cfg.lemma_removals = get_or(j, "lemma_removals", cfg.lemma_removals);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

void save_config(const ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file " + path.string());
  out << config_to_json(cfg);
}

}  // namespace rggmst
