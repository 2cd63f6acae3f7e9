#include "frame.hpp"

#include <cmath>

#include "critwave/aubin.hpp"
#include "critwave/functionals.hpp"
#include "critwave/kernels.hpp"

namespace critwave::detail {

namespace kp = kernels::parallel;

RadialFrame radial_frame(const SpectralData& sd, const RadialGridPtr& g, double sigma, bool full) {
  const int d = g->d();
  const double es = std::exp(sigma);
  const double e_m1 = std::exp((0.5 * d - 1.0) * sigma), e_0 = std::exp(0.5 * d * sigma),
               e_1 = std::exp((0.5 * d + 1.0) * sigma);
  RadialFrame f;
  f.W = RadialField(g);
  f.L0rho_1 = RadialField(g);
  f.rho_1 = RadialField(g);
  if (full) {
    f.W_r = RadialField(g);
    f.rho_m1 = RadialField(g);
    f.rho_0 = RadialField(g);
  }
  const auto r = g->r();
  kp::for_each(g->n(), [&](std::size_t i) {
    const double t = es * r[i];
    const double rho = sd.rho_profile(t), rho_r = sd.rho_r_profile(t);
    f.W.v[i] = e_m1 * eval_W(d, t);
    f.rho_1.v[i] = e_1 * rho;
    f.L0rho_1.v[i] = e_1 * (t * rho_r + 0.5 * d * rho);
    if (full) {
      f.W_r.v[i] = e_0 * eval_W_r(d, t);
      f.rho_m1.v[i] = e_m1 * rho;
      f.rho_0.v[i] = e_0 * rho;
    }
  });
  return f;
}

BoxFrame box_frame(const SpectralData& sd, const BoxGridPtr& g, double sigma, const Vec3& c, bool full) {
  const double es = std::exp(sigma);
  const double e_m1 = std::exp(0.5 * sigma), e_0 = std::exp(1.5 * sigma), e_1 = std::exp(2.5 * sigma);
  BoxFrame f;
  f.W = BoxField(g);
  f.rho_1 = BoxField(g);
  f.L0rho_1 = BoxField(g);
  for (auto& x : f.drho_1) x = BoxField(g);
  if (full) {
    f.rho_m1 = BoxField(g);
    f.rho_0 = BoxField(g);
    for (auto& x : f.gradW) x = BoxField(g);
  }
  kp::for_each(g->size(), [&](std::size_t idx) {
    const auto x = g->point(idx);
    const Vec3 y{x[0] - c[0], x[1] - c[1], x[2] - c[2]};
    const double ry = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
    const double t = es * ry;
    const double rho = sd.rho_profile(t), rho_r = sd.rho_r_profile(t);
    f.W.v[idx] = e_m1 * eval_W(3, t);
    f.rho_1.v[idx] = e_1 * rho;
    f.L0rho_1.v[idx] = e_1 * (t * rho_r + 1.5 * rho);
    const double inv = ry > 0.0 ? 1.0 / ry : 0.0;
    for (int j = 0; j < 3; ++j) f.drho_1[j].v[idx] = e_1 * rho_r * y[j] * inv;
    if (full) {
      f.rho_m1.v[idx] = e_m1 * rho;
      f.rho_0.v[idx] = e_0 * rho;
      const double wr = e_0 * eval_W_r(3, t);
      for (int j = 0; j < 3; ++j) f.gradW[j].v[idx] = wr * y[j] * inv;
    }
  });
  return f;
}

SolitonOverlap soliton_overlap(const RadialGridPtr& g, std::span<const double> u, std::span<const double> u_r,
                               double sigma) {
  const RadialField W = sample_W(g, sigma);
  const RadialField W_r = radial_derivative(W);
  return {hdot1_from_grad(*g, u, u_r, W.v, W_r.v), hdot1_from_grad(*g, W.v, W_r.v, W.v, W_r.v)};
}

SolitonOverlap soliton_overlap(const BoxGridPtr& g, const std::array<BoxField, 3>& grad_u, double sigma,
                               const Vec3& c) {
  // Differentiate the sampled soliton with the same stencils as u, so that
  // u = W_sigma(. - c) gives exactly zero distance.
  BoostParams bp;
  bp.sigma = sigma;
  bp.q = c;
  const BoxField W = sample_W_family(bp, g).u1;
  const auto gw = box_gradient(W);
  const auto w = g->weights();
  SolitonOverlap o;
  o.B = kp::sum(g->size(), [&](std::size_t i) {
    return w[i] * (grad_u[0].v[i] * gw[0].v[i] + grad_u[1].v[i] * gw[1].v[i] + grad_u[2].v[i] * gw[2].v[i]);
  });
  o.C = kp::sum(g->size(), [&](std::size_t i) {
    return w[i] * (gw[0].v[i] * gw[0].v[i] + gw[1].v[i] * gw[1].v[i] + gw[2].v[i] * gw[2].v[i]);
  });
  return o;
}

}  // namespace critwave::detail
