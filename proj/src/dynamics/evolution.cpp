#include <cmath>
#include <limits>
#include <stdexcept>

#include "critwave/dynamics.hpp"
#include "critwave/functionals.hpp"

namespace critwave {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// sigma may be held across at most this many monitors without a fit
constexpr int kMaxFitGap = 5;

struct TauClock {
  double tau = 0.0;
  double last_sigma = kNaN;
  double last_t = 0.0;
  int gap = 0;
  bool live = true;

  double advance(double t, bool have, double sigma) {
    if (!have) {
      ++gap;
      if (gap > kMaxFitGap) live = false;
      if (live && std::isfinite(last_sigma)) tau += std::exp(last_sigma) * (t - last_t);
      last_t = t;
      return live ? tau : kNaN;
    }
    if (std::isfinite(last_sigma) && live)
      tau += 0.5 * (std::exp(last_sigma) + std::exp(sigma)) * (t - last_t);
    // a fit after a long gap restarts the clock from the last value
    live = true;
    gap = 0;
    last_sigma = sigma;
    last_t = t;
    return tau;
  }
};

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Blowup: return "Blowup";
    case Verdict::Scatter: return "Scatter";
    default: return "Undetermined";
  }
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "Blowup") return Verdict::Blowup;
  if (s == "Scatter") return Verdict::Scatter;
  if (s == "Undetermined") return Verdict::Undetermined;
  throw std::invalid_argument("unknown verdict: " + s);
}

TrajectoryRecord evolve_direction(const RadialState& s0, int direction, const EvolutionContext& ctx) {
  if (!ctx.modulator) throw std::invalid_argument("evolve: no modulator");
  const EvolutionConfig& cfg = ctx.cfg;
  cfg.validate();
  const Modulator& M = *ctx.modulator;
  const Thresholds& th = M.thresholds();

  RadialState s = s0;
  if (direction < 0) s.u2 = scaled(s.u2, -1.0);
  const RadialWave rw(s.grid(), cfg.parallel);
  RadialWave::Phase p = rw.to_phase(s);

  TrajectoryRecord rec;
  rec.direction = direction < 0 ? -1 : 1;
  TauClock clock;
  std::optional<double> sigma_seed;
  RadialState checkpoint = s;
  double t_check = 0.0;

  auto monitor = [&](const RadialState& st) {
    const double t = p.t;
    const double n2 = norm_H2(st);
    const double lp = lpow_integral(st.u1);
    const DistanceReport rep = M.distance(st, sigma_seed);
    const bool fit_ok = rep.have_fit && rep.radial_fit && rep.dW <= th.delta_E;
    double l1 = kNaN, l2 = kNaN, sg = kNaN, gn = kNaN;
    if (fit_ok) {
      const ModeSplit ms = M.split_modes(*rep.radial_fit);
      l1 = ms.lambda1;
      l2 = ms.lambda2;
      sg = rep.fit.sigma;
      gn = std::sqrt(std::max(0.0, ms.gamma_norm2));
    }
    if (rep.have_fit) sigma_seed = rep.fit.sigma;
    else sigma_seed = rep.nearest_sigma;
    const Cutoff w{t + cfg.cone_offset};
    rec.t.push_back(t);
    rec.tau.push_back(clock.advance(t, fit_ok, sg));
    rec.E.push_back(energy_E(st));
    rec.K.push_back(hdot1_dot(st.u1, st.u1) - lp);
    rec.dW.push_back(rep.dW);
    rec.lambda1.push_back(l1);
    rec.sigma.push_back(sg);
    rec.Eext.push_back(exterior_energy(st, t + cfg.cone_offset));
    rec.Vw.push_back(virial_Vw(st, w));
    rec.equip.push_back(equipartition_moment(st, w));
    rec.lambda2.push_back(l2);
    rec.gamma_norm.push_back(gn);
    rec.norm.push_back(std::sqrt(n2));
    rec.pot_ratio.push_back(n2 > 0.0 ? lp / n2 : 0.0);
    rec.fit_ok.push_back(fit_ok ? 1 : 0);
    rec.sign_S.push_back(M.sign_functional(st, rep).value);
  };

  monitor(s);
  const double dt0 = cfg.dt();
  double t_next = cfg.monitor_dt;
  bool blown = false;
  while (p.t < cfg.t_max - 0.5 * dt0) {
    const double dt = rw.guarded_dt(p, dt0);
    if (dt < 1e-10 * dt0) {
      blown = true;
      break;
    }
    rw.step(p, dt);
    ++rec.steps;
    if (!std::isfinite(p.max_u)) {
      blown = true;
      break;
    }
    const bool at_monitor = p.t >= t_next - 0.5 * dt0;
    if (dt < dt0 && !at_monitor) {
      // amplitude-limited steps: watch the norm between monitors too
      const double nrm = std::sqrt(norm_H2(rw.to_state(p)));
      if (!std::isfinite(nrm) || blowup_triggered(nrm, cfg)) {
        blown = true;
        break;
      }
    }
    if (!at_monitor) continue;
    t_next += cfg.monitor_dt;
    const RadialState st = rw.to_state(p);
    monitor(st);
    const double nrm = rec.norm.back();
    if (!std::isfinite(nrm) || blowup_triggered(nrm, cfg)) {
      blown = true;
      break;
    }
    if (nrm <= 0.5 * cfg.blowup_norm_threshold) {
      checkpoint = st;
      t_check = p.t;
    }
    if (rec.verdict == Verdict::Undetermined && detect_scattering(rec, cfg, th)) {
      rec.verdict = Verdict::Scatter;
      rec.verdict_time = p.t;
      if (cfg.stop_on_verdict) return rec;
    }
  }
  if (blown) {
    const double t_b = p.t;
    rec.verdict_time = t_b;
    if (!cfg.confirm_blowup) {
      rec.verdict = Verdict::Blowup;
      rec.note = "norm threshold passed (unconfirmed)";
    } else if (confirm_blowup(checkpoint, t_check, t_b + std::max(1.0, 2.0 * (t_b - t_check)), cfg)) {
      rec.verdict = Verdict::Blowup;
      rec.blowup_confirmed = true;
      rec.note = "norm threshold passed, confirmed on the refined grid";
    } else {
      rec.verdict = Verdict::Undetermined;
      rec.note = "norm threshold passed, not reproduced on the refined grid";
    }
    return rec;
  }
  if (rec.verdict == Verdict::Undetermined) rec.note = "horizon reached without a verdict";
  return rec;
}

EvolutionResult evolve_with_monitors(const RadialState& s0, const EvolutionContext& ctx) {
  EvolutionResult r;
  r.forward = evolve_direction(s0, 1, ctx);
  r.backward = evolve_direction(s0, -1, ctx);
  return r;
}

}  // namespace critwave
