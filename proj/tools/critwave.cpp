// critwave: command line driver.
//
//   critwave constants [--verify]      build/calibrate and write the constants file
//   critwave static                    static checks, JSON report
//   critwave evolve EXPERIMENT.ini     one experiment, CSV + JSON per run
//   critwave quadrant                  the four-quadrant sweep
//
// Exit codes: 0 ok, 1 usage/runtime error, 2 an Undetermined verdict, 3 a failed check.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <omp.h>

#include <CLI11.hpp>

#include "critwave/expcli.hpp"

namespace fs = std::filesystem;
using namespace critwave;

namespace {

struct Common {
  std::string config_path;
  std::string out = "out";
  int threads = 0;
  std::int64_t seed = -1;
};

Config make_config(const Common& c) {
  Config cfg;
  if (!c.config_path.empty()) merge_config(cfg, c.config_path);
  if (c.threads > 0) cfg.threads = c.threads;
  if (c.seed >= 0) cfg.seed = static_cast<std::uint64_t>(c.seed);
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  return cfg;
}

void write_json(const nlohmann::json& j, const fs::path& p) {
  fs::create_directories(p.parent_path().empty() ? fs::path(".") : p.parent_path());
  std::ofstream os(p);
  os << j.dump(2) << "\n";
}

int cmd_constants(const Common& c, bool verify) {
  const Config cfg = make_config(c);
  if (verify) {
    if (!fs::exists(cfg.constants_path)) {
      std::cerr << "no constants file at " << cfg.constants_path << "\n";
      return 1;
    }
    const double diff = verify_constants_file(cfg.constants_path, cfg);
    std::printf("max relative difference %.3e (tolerance 1e-10)\n", diff);
    return diff <= 1e-10 ? 0 : 3;
  }
  const auto lab = Lab::build(cfg);
  const fs::path p(cfg.constants_path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  write_constants_file(cfg.constants_path, lab->spectral(), lab->calibration());
  const Thresholds& th = lab->thresholds();
  std::printf("k = %.12f  a_W = %.6f  b_W = %.6f\n", lab->spectral().k, lab->spectral().a_W, lab->spectral().b_W);
  std::printf("delta_A = %.6f  delta_* = %.6f  eps_* = %.6f\n", th.delta_A, th.delta_star, th.eps_star);
  std::printf("wrote %s\n", cfg.constants_path.c_str());
  return 0;
}

int cmd_static(const Common& c, bool no_boost) {
  const Config cfg = make_config(c);
  const auto lab = Lab::open(cfg);
  StaticOptions opt;
  opt.seed = cfg.seed;
  opt.include_boost = !no_boost;
  const StaticReport rep = run_static_suite(*lab, opt);
  for (const auto& r : rep.checks)
    std::printf("%-40s %s  value %.3e  tol %.1e  (%.2fs)\n", r.name.c_str(), r.pass ? "pass" : "FAIL", r.value,
                r.tolerance, r.seconds);
  const fs::path p = fs::path(c.out) / "static_report.json";
  write_json(rep.to_json(), p);
  std::printf("report: %s\n", p.c_str());
  return rep.all_pass() ? 0 : 3;
}

int cmd_evolve(const Common& c, const std::vector<std::string>& experiments) {
  const Config cfg = make_config(c);
  const auto lab = Lab::open(cfg);
  int code = 0;
  for (const auto& path : experiments) {
    const ExperimentSpec spec = load_experiment(path, cfg);
    const RunOutput out = run_experiment(spec, *lab, c.out);
    const auto& f = out.result.forward;
    const auto& b = out.result.backward;
    std::printf("%s: backward %s (t=%.2f)  forward %s (t=%.2f)  %.1fs\n", spec.name.c_str(),
                to_string(b.verdict).c_str(), b.verdict_time, to_string(f.verdict).c_str(), f.verdict_time,
                out.runtime);
    if (out.ejection_forward.ok) std::printf("  forward ejection rate/k = %.4f\n", out.ejection_forward.rate_over_k);
    if (f.verdict == Verdict::Undetermined || b.verdict == Verdict::Undetermined) code = 2;
  }
  return code;
}

int cmd_quadrant(const Common& c, std::vector<double> eps, int variants) {
  const Config cfg = make_config(c);
  const auto lab = Lab::open(cfg);
  if (eps.empty()) eps = cfg.eps_list;
  if (variants < 0) variants = cfg.random_variants;
  const QuadrantTable t = run_quadrant_sweep(*lab, eps, variants, cfg.seed, (fs::path(c.out) / "runs").string(),
                                             cfg.threads);
  const fs::path p = fs::path(c.out) / "quadrant_table.csv";
  write_quadrant_csv(t, p.string());
  for (const auto& r : t.rows)
    std::printf("%-24s eps %.1e  backward %-12s forward %-12s %s\n", r.label.c_str(), r.eps,
                to_string(r.backward).c_str(), to_string(r.forward).c_str(), r.matches() ? "" : "MISMATCH");
  std::printf("table: %s  (worst linear deviation %.3f, one-pass %s)\n", p.c_str(), t.worst_linear(),
              t.one_pass_ok() ? "ok" : "violated");
  if (t.undetermined() > 0) return 2;
  return t.pattern_ok() && t.one_pass_ok() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"critical focusing wave equation: soliton modulation and four-quadrant dynamics"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config_path, "INI file with global settings")->check(CLI::ExistingFile);
  app.add_option("--out", common.out, "output directory");
  app.add_option("--threads", common.threads, "OpenMP threads (0: default)");
  app.add_option("--seed", common.seed, "seed for randomized probes and variants");

  bool verify = false;
  auto* constants = app.add_subcommand("constants", "build spectral data and calibrated thresholds");
  constants->add_flag("--verify", verify, "rebuild and compare with the existing file");

  bool no_boost = false;
  auto* stat = app.add_subcommand("static", "run the static check suite");
  stat->add_flag("--no-boost", no_boost, "skip the 3-D boost identity");

  std::vector<std::string> experiments;
  auto* evolve = app.add_subcommand("evolve", "run experiments");
  evolve->add_option("experiment", experiments, "experiment INI files")->required()->check(CLI::ExistingFile);

  std::vector<double> eps;
  int variants = -1;
  auto* quad = app.add_subcommand("quadrant", "four-quadrant sweep");
  quad->add_option("--eps", eps, "eps values (default from config)");
  quad->add_option("--variants", variants, "randomized perturbed runs (default from config)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*constants) return cmd_constants(common, verify);
    if (*stat) return cmd_static(common, no_boost);
    if (*evolve) return cmd_evolve(common, experiments);
    if (*quad) return cmd_quadrant(common, eps, variants);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
