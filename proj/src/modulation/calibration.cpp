#include <cmath>
#include <random>
#include <stdexcept>

#include "critwave/aubin.hpp"
#include "critwave/functionals.hpp"
#include "critwave/modulation.hpp"

namespace critwave {

namespace {

// Unit-norm random radial perturbations: sums of three Gaussians in both
// components, plus +-rho.
std::vector<RadialState> probe_directions(const SpectralData& sd, int n, std::uint64_t seed) {
  const RadialGridPtr& g = sd.grid;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<RadialState> dirs;
  dirs.emplace_back(sd.rho, RadialField(g));
  dirs.emplace_back(scaled(sd.rho, -1.0), RadialField(g));
  const auto r = g->r();
  for (int i = 0; i < n; ++i) {
    RadialState v(g);
    for (int t = 0; t < 3; ++t) {
      const double a = std::exp(1.5 * U(rng)), c1 = N(rng), c2 = N(rng);
      for (std::size_t j = 0; j < g->n(); ++j) {
        const double e = std::exp(-r[j] * r[j] / (a * a));
        v.u1.v[j] += c1 * e;
        v.u2.v[j] += c2 * e / a;
      }
    }
    dirs.push_back(scaled(v, 1.0 / std::sqrt(norm_H2(v))));
  }
  return dirs;
}

}  // namespace

Calibration calibrate_thresholds(const std::shared_ptr<const SpectralData>& sd, int n_dirs, std::uint64_t seed) {
  const RadialGridPtr& g = sd->grid;
  const RadialField W = sample_W(g);
  Modulator M(sd, Thresholds::chain(1e3, 1.0));  // thresholds unused by fit()
  Calibration cal;

  // Capture radius: walk out along each direction until some fit fails.
  const auto dirs = probe_directions(*sd, n_dirs, seed);
  double cap = 0.0;
  for (double amp = 0.05; amp < 5.0 && cap == 0.0; amp *= 1.1) {
    double worst = 1e300;
    for (const auto& v : dirs) {
      const RadialState u(axpy(W, amp, v.u1), scaled(v.u2, amp));
      ++cal.probes;
      const RadialFit f = M.fit(u);
      if (!f.converged && !f.ambiguous) worst = std::min(worst, M.nearest_soliton(u).dist);
    }
    if (worst < 1e300) cap = worst;
  }
  if (cap == 0.0) throw std::runtime_error("calibrate_thresholds: no fit failure found below amplitude 5");
  cal.capture_radius = cap;

  // d1 and plain distance on W + eps rho
  auto probe = [&](double eps, double* dist) {
    const RadialState u(axpy(W, eps, sd->rho), RadialField(g));
    const RadialFit f = M.fit(u);
    if (!f.converged) throw std::runtime_error("calibrate_thresholds: probe fit failed");
    *dist = M.nearest_soliton(u).dist;
    const double dE = energy_E(u) - functional_J(W);
    return std::sqrt(std::max(0.0, dE + sd->k * sd->k * f.lambda1 * f.lambda1));
  };

  double C = 1.0, eps = 0.0, dist = 0.0;
  for (cal.iterations = 1; cal.iterations <= 50; ++cal.iterations) {
    const Thresholds th = Thresholds::chain(0.5 * C * cap, C);
    const double target = 0.5 * th.delta_E;
    // secant on eps for d1(eps) = target
    double e0 = target / (std::sqrt(0.5) * sd->k), e1 = 1.05 * e0;
    double f0 = probe(e0, &dist) - target, f1 = probe(e1, &dist) - target;
    for (int it = 0; it < 40 && std::abs(f1) > 1e-12 * target; ++it) {
      const double e2 = e1 - f1 * (e1 - e0) / (f1 - f0);
      e0 = e1;
      f0 = f1;
      e1 = e2;
      f1 = probe(e1, &dist) - target;
    }
    eps = e1;
    const double C_new = target / dist;
    const bool done = std::abs(C_new - C) < 1e-9 * C;
    C = C_new;
    if (done) break;
  }
  cal.C_d0 = C;
  cal.probe_eps = eps;
  cal.thresholds = Thresholds::chain(0.5 * C * cap, C);
  return cal;
}

}  // namespace critwave
