#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <stdexcept>

#include "critwave/aubin.hpp"
#include "critwave/expcli.hpp"
#include "critwave/field_io.hpp"
#include "critwave/functionals.hpp"
#include "critwave/profile.hpp"

namespace critwave {

namespace {

RadialGridPtr spectral_grid(const Config& c) {
  return RadialGrid::stretched(c.d, c.spectral_n, c.spectral_r_max, c.spectral_core);
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("missing constants file " + path);
  nlohmann::json j;
  is >> j;
  return j;
}

nlohmann::json ejection_json(const EjectionFit& f) {
  return {{"ok", f.ok},
          {"message", f.message},
          {"rate", f.rate},
          {"rate_over_k", f.rate_over_k},
          {"points", f.points},
          {"tau0", f.tau0},
          {"tau1", f.tau1},
          {"dW_monotone", f.dW_monotone},
          {"sigma_ratio", f.sigma_ratio}};
}

}  // namespace

void write_constants_file(const std::string& path, const SpectralData& sd, const Calibration& cal) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  write_constants(path, sd);
  nlohmann::json j = read_json(path);
  const Thresholds& t = cal.thresholds;
  j["calibration"] = {{"capture_radius", cal.capture_radius}, {"C_d0", cal.C_d0},       {"probe_eps", cal.probe_eps},
                      {"iterations", cal.iterations},         {"probes", cal.probes},   {"delta_A", t.delta_A},
                      {"delta_E", t.delta_E},                 {"delta_H", t.delta_H},   {"delta_S", t.delta_S},
                      {"delta_star", t.delta_star},           {"eps_star", t.eps_star}};
  std::ofstream os(path);
  os << std::setprecision(17) << j.dump(2) << "\n";
}

std::shared_ptr<const Lab> Lab::build(const Config& cfg) {
  auto lab = std::make_shared<Lab>();
  lab->cfg_ = cfg;
  lab->sd_ = std::make_shared<const SpectralData>(SpectralData::build(spectral_grid(cfg)));
  lab->cal_ = calibrate_thresholds(lab->sd_, cfg.calibration_dirs, cfg.calibration_seed);
  lab->mod_ = std::make_unique<Modulator>(lab->sd_, lab->cal_.thresholds);
  return lab;
}

std::shared_ptr<const Lab> Lab::open(const Config& cfg, bool build_if_missing) {
  if (!std::filesystem::exists(cfg.constants_path)) {
    if (!build_if_missing) throw std::runtime_error("missing constants file " + cfg.constants_path);
    auto lab = build(cfg);
    write_constants_file(cfg.constants_path, lab->spectral(), lab->calibration());
    return lab;
  }
  const nlohmann::json j = read_json(cfg.constants_path);
  if (!j.contains("calibration")) throw std::runtime_error(cfg.constants_path + ": no calibration block");
  if (j.at("d").get<int>() != cfg.d) throw std::runtime_error(cfg.constants_path + ": dimension does not match config");
  auto lab = std::make_shared<Lab>();
  lab->cfg_ = cfg;
  lab->sd_ = std::make_shared<const SpectralData>(SpectralData::build(spectral_grid(cfg), false));
  const double k_file = j.at("k").get<double>();
  if (std::abs(lab->sd_->k - k_file) > 1e-8 * k_file)
    throw std::runtime_error(cfg.constants_path + " is stale (k differs); regenerate it with `critwave constants`");
  const auto& c = j.at("calibration");
  Calibration& cal = lab->cal_;
  cal.capture_radius = c.at("capture_radius").get<double>();
  cal.C_d0 = c.at("C_d0").get<double>();
  cal.probe_eps = c.value("probe_eps", 0.0);
  cal.iterations = c.value("iterations", 0);
  cal.probes = c.value("probes", 0);
  cal.thresholds = Thresholds::chain(c.at("delta_A").get<double>(), cal.C_d0);
  lab->mod_ = std::make_unique<Modulator>(lab->sd_, cal.thresholds);
  return lab;
}

double verify_constants_file(const std::string& path, const Config& cfg) {
  const nlohmann::json old = read_json(path);
  const auto lab = Lab::build(cfg);
  const std::string tmp = path + ".verify.tmp";
  write_constants_file(tmp, lab->spectral(), lab->calibration());
  const nlohmann::json fresh = read_json(tmp);
  std::filesystem::remove(tmp);
  double worst = 0.0;
  auto cmp = [&](const nlohmann::json& a, const nlohmann::json& b) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!it->is_number_float()) continue;
      const double x = it->get<double>(), y = b.at(it.key()).get<double>();
      const double scale = std::max(std::abs(x), 1e-300);
      worst = std::max(worst, std::abs(x - y) / scale);
    }
  };
  cmp(old, fresh);
  cmp(old.at("calibration"), fresh.at("calibration"));
  return worst;
}

RadialState initial_data(const ExperimentSpec& spec, const Lab& lab, const RadialGridPtr& g) {
  RadialState s(g);
  const auto r = g->r();
  switch (spec.recipe) {
    case Recipe::quadrant: {
      const RadialField rho = lab.spectral().rho_profile.resample(g);
      s = RadialState(axpy(sample_W(g), spec.eps * spec.a1, rho), scaled(rho, spec.eps * spec.a2));
      break;
    }
    case Recipe::scaled_w:
      s.u1 = scaled(sample_W(g), spec.scale);
      break;
    case Recipe::bump:
      for (std::size_t i = 0; i < g->n(); ++i) s.u1.v[i] = spec.amplitude * std::exp(-r[i] * r[i] / (spec.width * spec.width));
      break;
    case Recipe::file: {
      const auto sep = spec.file.find(';');
      const RadialField u1 = read_radial(spec.file.substr(0, sep));
      s.u1 = RadialProfile::from_field(u1, kernels::Parity::even, Tail::harmonic).resample(g);
      if (sep != std::string::npos) {
        const RadialField u2 = read_radial(spec.file.substr(sep + 1));
        s.u2 = RadialProfile::from_field(u2).resample(g);
      }
      break;
    }
  }
  if (spec.perturb > 0.0) {
    // generic smooth bump in both components, ||b||_H = perturb * eps
    std::mt19937_64 rng(spec.perturb_seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::normal_distribution<double> N;
    const double r0 = 3.0 * U(rng), w = 0.5 + 1.5 * U(rng), c1 = N(rng), c2 = N(rng);
    RadialState b(g);
    for (std::size_t i = 0; i < g->n(); ++i) {
      const double e = std::exp(-(r[i] - r0) * (r[i] - r0) / (w * w)) + std::exp(-(r[i] + r0) * (r[i] + r0) / (w * w));
      b.u1.v[i] = c1 * e;
      b.u2.v[i] = c2 * e / w;
    }
    s = axpy(s, spec.perturb * spec.eps / std::sqrt(norm_H2(b)), b);
  }
  return s;
}

RunOutput run_experiment(const ExperimentSpec& spec, const Lab& lab, const std::string& out_dir) {
  const Thresholds& th = lab.thresholds();
  if (spec.recipe == Recipe::quadrant && spec.eps > th.eps_star * (1.0 + 1e-12))
    throw std::runtime_error("experiment " + spec.name + ": eps exceeds the calibrated eps_*");
  const auto t0 = std::chrono::steady_clock::now();
  EvolutionContext ctx{&lab.modulator(), spec.evolution};
  const RadialState s0 = initial_data(spec, lab, spec.evolution.grid());
  RunOutput out;
  out.result = evolve_with_monitors(s0, ctx);
  const double k = lab.spectral().k;
  out.ejection_forward = fit_ejection_rate(out.result.forward, k, th);
  out.ejection_backward = fit_ejection_rate(out.result.backward, k, th);
  out.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::string base = (std::filesystem::path(out_dir) / spec.name).string();
    write_record_csv(out.result.forward, base + "_forward.csv");
    write_record_csv(out.result.backward, base + "_backward.csv");
    nlohmann::json extra = {{"name", spec.name},
                            {"recipe", to_string(spec.recipe)},
                            {"a", {spec.a1, spec.a2}},
                            {"eps", spec.eps},
                            {"perturb", spec.perturb},
                            {"perturb_seed", spec.perturb_seed},
                            {"k", k},
                            {"delta_star", th.delta_star},
                            {"delta_H", th.delta_H},
                            {"ejection_forward", ejection_json(out.ejection_forward)},
                            {"ejection_backward", ejection_json(out.ejection_backward)}};
    write_verdict_json(out.result, base + ".json", extra.dump());
  }
  return out;
}

}  // namespace critwave
