#include <cmath>
#include <stdexcept>

#include "critwave/dynamics.hpp"
#include "critwave/kernels.hpp"

namespace critwave {

std::size_t EvolutionConfig::n() const { return static_cast<std::size_t>(std::llround(r_max / h)); }

RadialGridPtr EvolutionConfig::grid() const { return RadialGrid::uniform(3, n(), r_max); }

void EvolutionConfig::validate() const {
  auto pos = [](double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument(std::string("evolution: ") + what + " must be positive");
  };
  pos(h, "h");
  pos(r_max, "r_max");
  pos(cfl, "cfl");
  pos(t_max, "t_max");
  pos(monitor_dt, "monitor_dt");
  pos(blowup_norm_threshold, "blowup_norm_threshold");
  pos(scatter_window, "scatter_window");
  pos(scatter_ratio, "scatter_ratio");
  pos(cone_offset, "cone_offset");
  if (cfl > 0.5) throw std::invalid_argument("evolution: cfl must not exceed 0.5");
  if (n() < 64) throw std::invalid_argument("evolution: fewer than 64 grid nodes");
  if (monitor_dt < dt()) throw std::invalid_argument("evolution: monitor_dt below the time step");
}

RadialWave::RadialWave(RadialGridPtr g, bool parallel) : g_(std::move(g)), parallel_(parallel) {
  if (g_->map() != GridMap::uniform || g_->d() != 3)
    throw std::invalid_argument("RadialWave: needs a uniform d = 3 grid");
}

RadialWave::Phase RadialWave::to_phase(const RadialState& s, double t) const {
  if (!s.grid()->same_as(*g_)) throw std::invalid_argument("RadialWave: state lives on another grid");
  const auto r = g_->r();
  Phase p;
  p.t = t;
  p.w.resize(g_->n());
  p.v.resize(g_->n());
  p.a.resize(g_->n());
  for (std::size_t i = 0; i < g_->n(); ++i) {
    p.w[i] = r[i] * s.u1.v[i];
    p.v[i] = r[i] * s.u2.v[i];
  }
  accel(p);
  return p;
}

RadialState RadialWave::to_state(const Phase& p) const {
  RadialState s(g_);
  const auto r = g_->r();
  for (std::size_t i = 0; i < g_->n(); ++i) {
    s.u1.v[i] = p.w[i] / r[i];
    s.u2.v[i] = p.v[i] / r[i];
  }
  return s;
}

void RadialWave::accel(Phase& p) const {
  if (parallel_)
    kernels::parallel::wave_accel(p.w, g_->r(), g_->ds(), p.a);
  else
    kernels::serial::wave_accel(p.w, g_->r(), g_->ds(), p.a);
  const auto r = g_->r();
  double m = 0.0;
  for (std::size_t i = 0; i < p.w.size(); ++i) m = std::max(m, std::abs(p.w[i] / r[i]));
  p.max_u = m;
}

void RadialWave::step(Phase& p, double dt) const {
  const std::size_t n = p.w.size();
  const double h = g_->ds();
  for (std::size_t i = 0; i < n; ++i) {
    p.v[i] += 0.5 * dt * p.a[i];
    p.w[i] += dt * p.v[i];
  }
  accel(p);
  for (std::size_t i = 0; i < n; ++i) p.v[i] += 0.5 * dt * p.a[i];
  // outgoing condition w_t = -w_r, one-sided
  p.v[n - 1] = -(p.w[n - 1] - p.w[n - 2]) / h;
  p.t += dt;
}

RadialState RadialWave::step(const RadialState& s, double dt) const {
  Phase p = to_phase(s);
  step(p, dt);
  return to_state(p);
}

double RadialWave::guarded_dt(const Phase& p, double dt0) const {
  const double m2 = p.max_u * p.max_u;
  if (m2 <= 0.0) return dt0;
  return std::min(dt0, 0.3 / (std::sqrt(5.0) * m2));
}

}  // namespace critwave
