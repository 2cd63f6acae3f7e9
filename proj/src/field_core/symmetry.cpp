#include "critwave/symmetry.hpp"

#include <cmath>

#include "critwave/functionals.hpp"

namespace critwave {

namespace kp = kernels::parallel;

RadialField scale_field(const RadialField& f, double sigma, double a, Tail tail) {
  if (sigma == 0.0) return f;
  return RadialProfile::from_field(f, kernels::Parity::even, tail).resample_scaled(f.grid, sigma, a);
}

RadialState apply_scaling(const RadialState& s, double sigma) {
  return RadialState(scale_field(s.u1, sigma, -1.0, Tail::harmonic), scale_field(s.u2, sigma, 0.0));
}

namespace {

// Cubic Lagrange interpolation along one axis. `src(j)` gives the node
// coordinate in xi-space to sample for output node j.
template <class Coord>
void interp_axis(const std::vector<double>& in, std::vector<double>& out, std::size_t m, int axis, double h,
                 double xi0, Coord&& coord) {
  const std::size_t stride = axis == 0 ? m * m : (axis == 1 ? m : 1);
  kp::for_each(m * m * m, [&](std::size_t idx) {
    const std::size_t j = (idx / stride) % m;
    const std::size_t base = idx - j * stride;
    const double t = (coord(j) - xi0) / h - 0.5;
    const long long i = static_cast<long long>(std::floor(t));
    const double u = t - static_cast<double>(i);
    const double w[4] = {-u * (u - 1) * (u - 2) / 6.0, (u + 1) * (u - 1) * (u - 2) / 2.0,
                         -(u + 1) * u * (u - 2) / 2.0, (u + 1) * u * (u - 1) / 6.0};
    double v = 0.0;
    for (int k = 0; k < 4; ++k) {
      const long long node = i - 1 + k;
      if (node >= 0 && node < static_cast<long long>(m)) v += w[k] * in[base + static_cast<std::size_t>(node) * stride];
    }
    out[idx] = v;
  });
}

double xi_of_x(const Box3DGrid& g, double x) { return g.map() == GridMap::uniform ? x : std::asinh(x / g.core()); }

}  // namespace

BoxField apply_translation(const BoxField& f, const Vec3& c) {
  const Box3DGrid& g = *f.grid;
  const std::size_t m = g.m();
  const double xi0 = -0.5 * g.h() * static_cast<double>(m);
  std::vector<double> a = f.v, b(f.v.size());
  for (int axis = 0; axis < 3; ++axis) {
    if (c[axis] == 0.0) continue;
    const auto x = g.x();
    interp_axis(a, b, m, axis, g.h(), xi0, [&](std::size_t j) { return xi_of_x(g, x[j] - c[axis]); });
    std::swap(a, b);
  }
  return BoxField(f.grid, std::move(a));
}

BoxState apply_translation(const BoxState& s, const Vec3& c) {
  return BoxState(apply_translation(s.u1, c), apply_translation(s.u2, c));
}

BoxField scale_field(const BoxField& f, double sigma, double a) {
  if (sigma == 0.0) return f;
  const Box3DGrid& g = *f.grid;
  const std::size_t m = g.m();
  const double xi0 = -0.5 * g.h() * static_cast<double>(m);
  const double es = std::exp(sigma);
  std::vector<double> u = f.v, v(f.v.size());
  for (int axis = 0; axis < 3; ++axis) {
    const auto x = g.x();
    interp_axis(u, v, m, axis, g.h(), xi0, [&](std::size_t j) { return xi_of_x(g, es * x[j]); });
    std::swap(u, v);
  }
  const double amp = std::exp((1.5 + a) * sigma);
  for (double& z : u) z *= amp;
  return BoxField(f.grid, std::move(u));
}

BoxState apply_scaling(const BoxState& s, double sigma) {
  return BoxState(scale_field(s.u1, sigma, -1.0), scale_field(s.u2, sigma, 0.0));
}

RadialField generator_Lambda(const RadialField& f, double a) {
  const auto fr = radial_derivative(f);
  const auto r = f.grid->r();
  const double c = 0.5 * f.grid->d() + a;
  RadialField out(f.grid);
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = r[i] * fr.v[i] + c * f.v[i];
  return out;
}

BoxField generator_Lambda(const BoxField& f, double a) {
  const auto g = box_gradient(f);
  const Box3DGrid& grid = *f.grid;
  BoxField out(f.grid);
  const double c = 1.5 + a;
  kp::for_each(grid.size(), [&](std::size_t i) {
    const auto x = grid.point(i);
    out.v[i] = x[0] * g[0].v[i] + x[1] * g[1].v[i] + x[2] * g[2].v[i] + c * f.v[i];
  });
  return out;
}

}  // namespace critwave
