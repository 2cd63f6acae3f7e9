#include <cmath>

#include "critwave/dynamics.hpp"
#include "critwave/functionals.hpp"
#include "critwave/profile.hpp"

namespace critwave {

bool blowup_triggered(double norm, const EvolutionConfig& cfg) {
  return !std::isfinite(norm) || norm > cfg.blowup_norm_threshold;
}

bool confirm_blowup(const RadialState& checkpoint, double t_c, double t_end, const EvolutionConfig& cfg) {
  EvolutionConfig fine = cfg;
  fine.h = 0.5 * cfg.h;
  const RadialGridPtr g = fine.grid();
  using kernels::Parity;
  const RadialState s(RadialProfile::from_field(checkpoint.u1, Parity::even).resample(g),
                      RadialProfile::from_field(checkpoint.u2, Parity::even).resample(g));
  const RadialWave rw(g, cfg.parallel);
  RadialWave::Phase p = rw.to_phase(s, t_c);
  const double dt0 = 0.5 * cfg.dt();
  while (p.t < t_end) {
    const double dt = rw.guarded_dt(p, dt0);
    if (dt < 1e-10 * dt0) return true;
    rw.step(p, dt);
    if (!std::isfinite(p.max_u)) return true;
    if (blowup_triggered(std::sqrt(norm_H2(rw.to_state(p))), cfg)) return true;
  }
  return false;
}

bool detect_scattering(const TrajectoryRecord& rec, const EvolutionConfig& cfg, const Thresholds& th) {
  const std::size_t n = rec.size();
  if (n == 0) return false;
  const double t1 = rec.t.back();
  if (t1 < cfg.scatter_window) return false;
  for (std::size_t i = n; i-- > 0 && rec.t[i] >= t1 - cfg.scatter_window;) {
    if (!(rec.K[i] > 0.0)) return false;
    if (!(rec.dW[i] >= th.delta_star)) return false;
    if (blowup_triggered(rec.norm[i], cfg)) return false;
  }
  return rec.pot_ratio.back() < cfg.scatter_ratio;
}

}  // namespace critwave
