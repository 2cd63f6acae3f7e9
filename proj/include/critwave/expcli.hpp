#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "critwave/dynamics.hpp"
#include "critwave/modulation.hpp"
#include "critwave/spectral.hpp"

namespace critwave {

// Global settings, read from an INI file. Sections: [spectral], [evolution],
// [calibration], [sweep], [run]. Keys not given keep their defaults.
struct Config {
  int d = 3;
  std::size_t spectral_n = 4096;
  double spectral_r_max = 200.0;
  double spectral_core = 1.0;
  std::string constants_path = "data/constants_d3.json";

  EvolutionConfig evolution;

  int calibration_dirs = 30;
  std::uint64_t calibration_seed = 3;

  std::vector<double> eps_list{1e-3, 3e-3, 1e-2};
  int random_variants = 20;
  double perturb_fraction = 0.1;

  std::uint64_t seed = 1;
  int threads = 0;  // 0: OpenMP default
};

Config load_config(const std::string& path);
// Applies an INI file on top of cfg.
void merge_config(Config& cfg, const std::string& path);
nlohmann::json to_json(const Config& cfg);

enum class Recipe { quadrant, scaled_w, bump, file };
std::string to_string(Recipe r);

struct ExperimentSpec {
  std::string name = "run";
  Recipe recipe = Recipe::quadrant;
  double a1 = 1.0, a2 = 0.0, eps = 1e-3;  // quadrant: W + eps (a1, a2) rho
  double scale = 0.5;                     // scaled_w: (scale W, 0)
  double amplitude = 0.1, width = 1.0;    // bump: amplitude exp(-r^2/width^2) in u1
  std::string file;                       // file: a radial field file pair "u1;u2"
  double perturb = 0.0;                   // generic bump added, fraction of eps in H
  std::uint64_t perturb_seed = 0;
  EvolutionConfig evolution;
};

/// Reads [experiment] (recipe and parameters) and optional [evolution]
/// overrides; evolution defaults come from base.
ExperimentSpec load_experiment(const std::string& path, const Config& base);

/// Spectral data, calibrated thresholds and the modulator, shared read-only
/// by every run.
class Lab {
 public:
  /// Loads thresholds from the constants file; builds and writes it first if
  /// it is missing and build_if_missing is set.
  static std::shared_ptr<const Lab> open(const Config& cfg, bool build_if_missing = true);
  static std::shared_ptr<const Lab> build(const Config& cfg);

  const Config& config() const { return cfg_; }
  const SpectralData& spectral() const { return *sd_; }
  const std::shared_ptr<const SpectralData>& spectral_ptr() const { return sd_; }
  const Calibration& calibration() const { return cal_; }
  const Thresholds& thresholds() const { return cal_.thresholds; }
  const Modulator& modulator() const { return *mod_; }

 private:
  Config cfg_;
  std::shared_ptr<const SpectralData> sd_;
  Calibration cal_;
  std::unique_ptr<Modulator> mod_;
};

void write_constants_file(const std::string& path, const SpectralData& sd, const Calibration& cal);
/// Rebuilds the constants and compares them with an existing file; returns
/// the largest relative difference.
double verify_constants_file(const std::string& path, const Config& cfg);

RadialState initial_data(const ExperimentSpec& spec, const Lab& lab, const RadialGridPtr& g);

struct RunOutput {
  EvolutionResult result;
  EjectionFit ejection_forward, ejection_backward;
  double runtime = 0.0;
};
/// Evolves both directions; writes <out>/<name>_{forward,backward}.csv and
/// <out>/<name>.json when out_dir is not empty.
RunOutput run_experiment(const ExperimentSpec& spec, const Lab& lab, const std::string& out_dir);

struct QuadrantRow {
  std::string label;
  double a1 = 0, a2 = 0, eps = 0;
  double perturb = 0;
  Verdict backward = Verdict::Undetermined, forward = Verdict::Undetermined;
  Verdict expected_backward = Verdict::Undetermined, expected_forward = Verdict::Undetermined;
  double ejection_rate = 0.0;  // forward rate / k, 0 when no window
  double linear_rel = 0.0;     // worst early-time deviation from the linearized forms
  bool one_pass_ok = true;
  double runtime = 0.0;
  bool matches() const { return backward == expected_backward && forward == expected_forward; }
};

struct QuadrantTable {
  std::vector<QuadrantRow> rows;
  std::uint64_t seed = 0;
  bool pattern_ok() const;
  int undetermined() const;
  bool one_pass_ok() const;
  double worst_linear() const;
};

// (backward, forward) verdicts the sign of the data predicts
std::pair<Verdict, Verdict> expected_verdicts(double a1, double a2);

/// 4 x |eps_list| quadrant runs, then `variants` randomized ones (random
/// quadrant and eps, plus a generic bump of perturb_fraction eps in H).
/// Runs are independent and spread over `threads` workers.
QuadrantTable run_quadrant_sweep(const Lab& lab, const std::vector<double>& eps_list, int variants,
                                 std::uint64_t seed, const std::string& out_dir, int threads = 0);
void write_quadrant_csv(const QuadrantTable& t, const std::string& path);

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct StaticReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  nlohmann::json to_json() const;
};

struct StaticOptions {
  std::size_t radial_n = 4096;  // grid for the ground-state identities
  int coercivity_probes = 100;
  int round_trips = 100;      // radial
  int box_round_trips = 100;  // with translation, on a 40^3 box
  std::uint64_t seed = 1;
  bool include_boost = true;
};

StaticReport run_static_suite(const Lab& lab, const StaticOptions& opt = {});

}  // namespace critwave
