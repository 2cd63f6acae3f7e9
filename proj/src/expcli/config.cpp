#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "critwave/expcli.hpp"

namespace critwave {

namespace pt = boost::property_tree;

namespace {

// Reads one INI file and rejects keys outside `known`, so typos fail loudly.
pt::ptree read_ini(const std::string& path, const std::set<std::string>& known) {
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::runtime_error("config: " + std::string(e.what()));
  }
  for (const auto& [section, body] : tree) {
    for (const auto& [key, value] : body) {
      (void)value;
      if (!known.count(section + "." + key)) throw std::runtime_error("config " + path + ": unknown key " + section + "." + key);
    }
  }
  return tree;
}

template <class T>
void get(const pt::ptree& t, const char* key, T& out) {
  if (auto v = t.get_optional<std::string>(key)) {
    try {
      out = t.get<T>(key);
    } catch (const pt::ptree_bad_data&) {
      throw std::runtime_error(std::string("config: bad value for ") + key + ": " + *v);
    }
  }
}

void get_bool(const pt::ptree& t, const char* key, bool& out) {
  if (auto v = t.get_optional<std::string>(key)) {
    if (*v == "true" || *v == "1" || *v == "yes") out = true;
    else if (*v == "false" || *v == "0" || *v == "no") out = false;
    else throw std::runtime_error(std::string("config: bad boolean for ") + key + ": " + *v);
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::runtime_error("config: bad number in list: " + item);
    }
  }
  return out;
}

const std::set<std::string> kEvolutionKeys = {
    "evolution.h",           "evolution.r_max",          "evolution.cfl",
    "evolution.t_max",       "evolution.monitor_dt",     "evolution.blowup_norm_threshold",
    "evolution.scatter_window", "evolution.scatter_ratio", "evolution.cone_offset",
    "evolution.confirm_blowup", "evolution.stop_on_verdict", "evolution.parallel"};

std::set<std::string> global_keys() {
  std::set<std::string> k = kEvolutionKeys;
  for (const char* s : {"spectral.d", "spectral.n", "spectral.r_max", "spectral.core", "spectral.constants",
                        "calibration.dirs", "calibration.seed", "sweep.eps", "sweep.variants",
                        "sweep.perturb_fraction", "run.seed", "run.threads"})
    k.insert(s);
  return k;
}

void read_evolution(const pt::ptree& t, EvolutionConfig& e) {
  get(t, "evolution.h", e.h);
  get(t, "evolution.r_max", e.r_max);
  get(t, "evolution.cfl", e.cfl);
  get(t, "evolution.t_max", e.t_max);
  get(t, "evolution.monitor_dt", e.monitor_dt);
  get(t, "evolution.blowup_norm_threshold", e.blowup_norm_threshold);
  get(t, "evolution.scatter_window", e.scatter_window);
  get(t, "evolution.scatter_ratio", e.scatter_ratio);
  get(t, "evolution.cone_offset", e.cone_offset);
  get_bool(t, "evolution.confirm_blowup", e.confirm_blowup);
  get_bool(t, "evolution.stop_on_verdict", e.stop_on_verdict);
  get_bool(t, "evolution.parallel", e.parallel);
  e.validate();
}

}  // namespace

void merge_config(Config& cfg, const std::string& path) {
  const pt::ptree t = read_ini(path, global_keys());
  get(t, "spectral.d", cfg.d);
  get(t, "spectral.n", cfg.spectral_n);
  get(t, "spectral.r_max", cfg.spectral_r_max);
  get(t, "spectral.core", cfg.spectral_core);
  get(t, "spectral.constants", cfg.constants_path);
  read_evolution(t, cfg.evolution);
  get(t, "calibration.dirs", cfg.calibration_dirs);
  get(t, "calibration.seed", cfg.calibration_seed);
  if (auto v = t.get_optional<std::string>("sweep.eps")) cfg.eps_list = parse_list(*v);
  get(t, "sweep.variants", cfg.random_variants);
  get(t, "sweep.perturb_fraction", cfg.perturb_fraction);
  get(t, "run.seed", cfg.seed);
  get(t, "run.threads", cfg.threads);
  if (cfg.d != 3 && cfg.d != 5) throw std::runtime_error("config: spectral.d must be 3 or 5");
  if (cfg.calibration_dirs < 1) throw std::runtime_error("config: calibration.dirs must be positive");
  if (cfg.random_variants < 0) throw std::runtime_error("config: sweep.variants must be non-negative");
}

Config load_config(const std::string& path) {
  Config c;
  merge_config(c, path);
  return c;
}

nlohmann::json to_json(const Config& c) {
  const EvolutionConfig& e = c.evolution;
  return {{"spectral", {{"d", c.d}, {"n", c.spectral_n}, {"r_max", c.spectral_r_max}, {"core", c.spectral_core},
                        {"constants", c.constants_path}}},
          {"evolution", {{"h", e.h}, {"r_max", e.r_max}, {"cfl", e.cfl}, {"t_max", e.t_max},
                         {"monitor_dt", e.monitor_dt}, {"blowup_norm_threshold", e.blowup_norm_threshold},
                         {"scatter_window", e.scatter_window}, {"scatter_ratio", e.scatter_ratio},
                         {"cone_offset", e.cone_offset}, {"confirm_blowup", e.confirm_blowup},
                         {"stop_on_verdict", e.stop_on_verdict}}},
          {"calibration", {{"dirs", c.calibration_dirs}, {"seed", c.calibration_seed}}},
          {"sweep", {{"eps", c.eps_list}, {"variants", c.random_variants}, {"perturb_fraction", c.perturb_fraction}}},
          {"run", {{"seed", c.seed}}}};
}

std::string to_string(Recipe r) {
  switch (r) {
    case Recipe::quadrant: return "quadrant";
    case Recipe::scaled_w: return "scaled_w";
    case Recipe::bump: return "bump";
    default: return "file";
  }
}

ExperimentSpec load_experiment(const std::string& path, const Config& base) {
  std::set<std::string> known = kEvolutionKeys;
  for (const char* s : {"experiment.name", "experiment.recipe", "experiment.a1", "experiment.a2", "experiment.eps",
                        "experiment.scale", "experiment.amplitude", "experiment.width", "experiment.file",
                        "experiment.perturb", "experiment.perturb_seed"})
    known.insert(s);
  const pt::ptree t = read_ini(path, known);
  ExperimentSpec s;
  s.evolution = base.evolution;
  get(t, "experiment.name", s.name);
  std::string recipe = "quadrant";
  get(t, "experiment.recipe", recipe);
  if (recipe == "quadrant") s.recipe = Recipe::quadrant;
  else if (recipe == "scaled_w") s.recipe = Recipe::scaled_w;
  else if (recipe == "bump") s.recipe = Recipe::bump;
  else if (recipe == "file") s.recipe = Recipe::file;
  else throw std::runtime_error("config: unknown recipe " + recipe);
  get(t, "experiment.a1", s.a1);
  get(t, "experiment.a2", s.a2);
  get(t, "experiment.eps", s.eps);
  get(t, "experiment.scale", s.scale);
  get(t, "experiment.amplitude", s.amplitude);
  get(t, "experiment.width", s.width);
  get(t, "experiment.file", s.file);
  get(t, "experiment.perturb", s.perturb);
  get(t, "experiment.perturb_seed", s.perturb_seed);
  read_evolution(t, s.evolution);
  if (s.recipe == Recipe::quadrant) {
    const bool unit = (std::abs(s.a1) == 1.0 && s.a2 == 0.0) || (s.a1 == 0.0 && std::abs(s.a2) == 1.0);
    if (!unit) throw std::runtime_error("config: quadrant a must be one of (+-1, 0), (0, +-1)");
    if (!(s.eps > 0.0)) throw std::runtime_error("config: eps must be positive");
  }
  if (s.recipe == Recipe::bump && !(s.width > 0.0)) throw std::runtime_error("config: width must be positive");
  if (s.recipe == Recipe::file && s.file.empty()) throw std::runtime_error("config: recipe file needs experiment.file");
  if (s.perturb < 0.0) throw std::runtime_error("config: perturb must be non-negative");
  return s;
}

}  // namespace critwave
