#include "critwave/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "critwave/aubin.hpp"

namespace critwave {

namespace kp = kernels::parallel;

namespace {

void same_grid(const RadialField& a, const RadialField& b) {
  if (a.v.size() != b.v.size() || !a.grid->same_as(*b.grid)) {
    throw std::invalid_argument("radial fields live on different grids");
  }
}

void same_grid(const BoxField& a, const BoxField& b) {
  if (a.v.size() != b.v.size() || !a.grid->same_as(*b.grid)) {
    throw std::invalid_argument("box fields live on different grids");
  }
}

inline double abspow(double x, double e) { return std::pow(std::abs(x), e); }

// |x|^{2*} for the two supported dimensions without calling pow.
inline double crit_pow(int d, double x) {
  const double x2 = x * x;
  if (d == 3) return x2 * x2 * x2;
  if (d == 5) return x2 * std::cbrt(x2 * x2);
  return abspow(x, critical_exponent(d));
}

}  // namespace

RadialField radial_derivative(const RadialField& f, kernels::Parity parity) {
  RadialField out(f.grid);
  kp::diff_s(f.v, parity, f.grid->ds(), out.v);
  const auto jac = f.grid->jac();
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] /= jac[i];
  return out;
}

std::array<BoxField, 3> box_gradient(const BoxField& f) {
  const Box3DGrid& g = *f.grid;
  const std::size_t m = g.m();
  std::array<BoxField, 3> out{BoxField(f.grid), BoxField(f.grid), BoxField(f.grid)};
  for (int a = 0; a < 3; ++a) kp::diff_axis(f.v, m, a, g.h(), out[a].v);
  if (g.map() != GridMap::uniform) {
    const auto jac = g.jac();
    kp::for_each(g.size(), [&](std::size_t idx) {
      out[0].v[idx] /= jac[idx / (m * m)];
      out[1].v[idx] /= jac[(idx / m) % m];
      out[2].v[idx] /= jac[idx % m];
    });
  }
  return out;
}

double l2_dot(const RadialField& a, const RadialField& b) {
  same_grid(a, b);
  return kp::dot(a.grid->weights(), a.v, b.v);
}

double l2_dot(const BoxField& a, const BoxField& b) {
  same_grid(a, b);
  return kp::dot(a.grid->weights(), a.v, b.v);
}

double hdot1_from_grad(const RadialGrid& g, std::span<const double> a, std::span<const double> a_r,
                       std::span<const double> b, std::span<const double> b_r) {
  const int d = g.d();
  const double R = g.r_max();
  const double tail = g.sphere_area() * (d - 2) * std::pow(R, d - 2) * g.edge_value(a) * g.edge_value(b);
  return kp::dot(g.weights(), a_r, b_r) + tail;
}

double hdot1_dot(const RadialField& a, const RadialField& b) {
  same_grid(a, b);
  const auto ar = radial_derivative(a);
  if (&a == &b) return hdot1_from_grad(*a.grid, a.v, ar.v, a.v, ar.v);
  const auto br = radial_derivative(b);
  return hdot1_from_grad(*a.grid, a.v, ar.v, b.v, br.v);
}

double hdot1_dot(const BoxField& a, const BoxField& b) {
  same_grid(a, b);
  const auto ga = box_gradient(a);
  const auto gb = &a == &b ? ga : box_gradient(b);
  const auto w = a.grid->weights();
  return kp::sum(w.size(), [&](std::size_t i) {
    return w[i] * (ga[0].v[i] * gb[0].v[i] + ga[1].v[i] * gb[1].v[i] + ga[2].v[i] * gb[2].v[i]);
  });
}

double lpow_integral(const RadialField& u) {
  const RadialGrid& g = *u.grid;
  const int d = g.d();
  const auto w = g.weights();
  const double inner = kp::sum(u.v.size(), [&](std::size_t i) { return w[i] * crit_pow(d, u.v[i]); });
  const double R = g.r_max();
  return inner + g.sphere_area() * crit_pow(d, g.edge_value(u.v)) * std::pow(R, d) / d;
}

double lpow_integral(const BoxField& u) {
  const auto w = u.grid->weights();
  return kp::sum(u.v.size(), [&](std::size_t i) { return w[i] * crit_pow(3, u.v[i]); });
}

double norm_H2(const RadialState& s) { return hdot1_dot(s.u1, s.u1) + l2_dot(s.u2, s.u2); }
double norm_H2(const BoxState& s) { return hdot1_dot(s.u1, s.u1) + l2_dot(s.u2, s.u2); }

double functional_J(const RadialField& u1) {
  return 0.5 * hdot1_dot(u1, u1) - lpow_integral(u1) / critical_exponent(u1.grid->d());
}
double functional_J(const BoxField& u1) { return 0.5 * hdot1_dot(u1, u1) - lpow_integral(u1) / 6.0; }
double functional_K(const RadialField& u1) { return hdot1_dot(u1, u1) - lpow_integral(u1); }
double functional_K(const BoxField& u1) { return hdot1_dot(u1, u1) - lpow_integral(u1); }

double energy_E(const RadialState& s) { return 0.5 * l2_dot(s.u2, s.u2) + functional_J(s.u1); }
double energy_E(const BoxState& s) { return 0.5 * l2_dot(s.u2, s.u2) + functional_J(s.u1); }

std::vector<double> momentum_P(const RadialState& s) {
  return std::vector<double>(static_cast<std::size_t>(s.grid()->d()), 0.0);
}

Vec3 momentum_P(const BoxState& s) {
  const auto g = box_gradient(s.u1);
  Vec3 P{};
  for (int a = 0; a < 3; ++a) P[a] = l2_dot(s.u2, g[a]);
  return P;
}

RadialField energy_density(const RadialState& s) {
  const int d = s.grid()->d();
  const double q = critical_exponent(d);
  const auto ur = radial_derivative(s.u1);
  RadialField e(s.grid());
  for (std::size_t i = 0; i < e.v.size(); ++i) {
    e.v[i] = 0.5 * (s.u2.v[i] * s.u2.v[i] + ur.v[i] * ur.v[i]) - crit_pow(d, s.u1.v[i]) / q;
  }
  return e;
}

BoxField energy_density(const BoxState& s) {
  const auto g = box_gradient(s.u1);
  BoxField e(s.grid());
  for (std::size_t i = 0; i < e.v.size(); ++i) {
    const double gg = g[0].v[i] * g[0].v[i] + g[1].v[i] * g[1].v[i] + g[2].v[i] * g[2].v[i];
    e.v[i] = 0.5 * (s.u2.v[i] * s.u2.v[i] + gg) - crit_pow(3, s.u1.v[i]) / 6.0;
  }
  return e;
}

double Cutoff::chi(double x) {
  x = std::abs(x);
  if (x <= 1.5) return 1.0;
  if (x >= 2.0) return 0.0;
  // C-infinity step built from exp(-1/t)
  auto f = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double t = (2.0 - x) / 0.5;
  return f(t) / (f(t) + f(1.0 - t));
}

double Cutoff::operator()(double r) const {
  if (!std::isfinite(radius)) return 1.0;
  return chi(r / radius);
}

std::vector<double> center_of_energy(const RadialState& s, const Cutoff&) {
  // x w(|x|) e(|x|) is odd, so every component integrates to zero.
  return std::vector<double>(static_cast<std::size_t>(s.grid()->d()), 0.0);
}

Vec3 center_of_energy(const BoxState& s, const Cutoff& w) {
  const auto e = energy_density(s);
  const Box3DGrid& g = *s.grid();
  const auto wt = g.weights();
  Vec3 c{};
  for (int a = 0; a < 3; ++a) {
    c[a] = kp::sum(g.size(), [&](std::size_t i) {
      const auto x = g.point(i);
      const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      return wt[i] * x[a] * w(r) * e.v[i];
    });
  }
  return c;
}

double symplectic_omega(const RadialState& a, const RadialState& b) {
  return l2_dot(a.u2, b.u1) - l2_dot(a.u1, b.u2);
}

double symplectic_omega(const BoxState& a, const BoxState& b) { return l2_dot(a.u2, b.u1) - l2_dot(a.u1, b.u2); }

double exterior_energy(const RadialState& s, double R) {
  const RadialGrid& g = *s.grid();
  const auto ur = radial_derivative(s.u1);
  const auto r = g.r();
  const auto w = g.weights();
  const double inner = kp::sum(g.n(), [&](std::size_t i) {
    return r[i] > R ? w[i] * (ur.v[i] * ur.v[i] + s.u2.v[i] * s.u2.v[i]) : 0.0;
  });
  const int d = g.d();
  const double uR = g.edge_value(s.u1.v);
  return inner + g.sphere_area() * (d - 2) * std::pow(g.r_max(), d - 2) * uR * uR;
}

double virial_Vw(const RadialState& s, const Cutoff& c) {
  const RadialGrid& g = *s.grid();
  const auto ur = radial_derivative(s.u1);
  const auto r = g.r();
  const auto w = g.weights();
  const double half_d = 0.5 * g.d();
  return kp::sum(g.n(), [&](std::size_t i) {
    return w[i] * c(r[i]) * s.u2.v[i] * (r[i] * ur.v[i] + half_d * s.u1.v[i]);
  });
}

double equipartition_moment(const RadialState& s, const Cutoff& c) {
  const RadialGrid& g = *s.grid();
  const auto r = g.r();
  const auto w = g.weights();
  return kp::sum(g.n(), [&](std::size_t i) { return w[i] * c(r[i]) * s.u2.v[i] * s.u1.v[i]; });
}

}  // namespace critwave
