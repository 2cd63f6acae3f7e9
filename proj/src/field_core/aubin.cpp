#include "critwave/aubin.hpp"

#include <cmath>
#include <stdexcept>

#include "critwave/kernels.hpp"

namespace critwave {

double critical_p(int d) { return (d + 2.0) / (d - 2.0); }
double critical_exponent(int d) { return 2.0 * d / (d - 2.0); }

namespace {

// (1+q)^{-d/2}
inline double pow_neg_half_d(int d, double x) {
  const double s = std::sqrt(x);
  if (d == 3) return 1.0 / (x * s);
  if (d == 5) return 1.0 / (x * x * s);
  return std::pow(x, -0.5 * d);
}

inline double qof(int d, double r) { return r * r / (d * (d - 2.0)); }

void check_scale(double sigma, double spacing) {
  if (std::exp(-sigma) < spacing) {
    throw std::domain_error("soliton scale e^{-sigma} is not resolved by the grid");
  }
}

}  // namespace

double eval_W(int d, double r) {
  const double x = 1.0 + qof(d, r);
  return x * pow_neg_half_d(d, x);
}

double eval_W(int d, std::span<const double> x) {
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  return eval_W(d, std::sqrt(r2));
}

double eval_W_r(int d, double r) { return -(r / d) * pow_neg_half_d(d, 1.0 + qof(d, r)); }

double eval_W_rr(int d, double r) {
  const double q = qof(d, r);
  const double a = pow_neg_half_d(d, 1.0 + q);
  return -a / d + q * a / (1.0 + q);
}

double eval_Wprime(int d, double r) { return r * eval_W_r(d, r) + (0.5 * d - 1.0) * eval_W(d, r); }

double eval_Wprime_r(int d, double r) { return 0.5 * d * eval_W_r(d, r) + r * eval_W_rr(d, r); }

RadialField sample_W(const RadialGridPtr& g, double sigma) {
  RadialField f(g);
  const int d = g->d();
  const double amp = std::exp((0.5 * d - 1.0) * sigma), es = std::exp(sigma);
  const auto r = g->r();
  kernels::parallel::for_each(g->n(), [&](std::size_t i) { f.v[i] = amp * eval_W(d, es * r[i]); });
  return f;
}

RadialField sample_W_r(const RadialGridPtr& g, double sigma) {
  RadialField f(g);
  const int d = g->d();
  const double amp = std::exp(0.5 * d * sigma), es = std::exp(sigma);
  const auto r = g->r();
  kernels::parallel::for_each(g->n(), [&](std::size_t i) { f.v[i] = amp * eval_W_r(d, es * r[i]); });
  return f;
}

RadialField sample_Wprime(const RadialGridPtr& g) {
  RadialField f(g);
  const auto r = g->r();
  for (std::size_t i = 0; i < g->n(); ++i) f.v[i] = eval_Wprime(g->d(), r[i]);
  return f;
}

RadialState sample_W_family(const BoostParams& bp, const RadialGridPtr& g) {
  for (int j = 0; j < 3; ++j) {
    if (bp.p[j] != 0.0 || bp.q[j] != 0.0) {
      throw std::invalid_argument("sample_W_family: radial grids need p = 0 and q = 0");
    }
  }
  check_scale(bp.sigma, g->min_spacing());
  return RadialState(sample_W(g, bp.sigma), RadialField(g));
}

BoxState sample_W_family(const BoostParams& bp, const BoxGridPtr& g) {
  // local spacing at the centre q
  double spacing = 0.0;
  for (int a = 0; a < 3; ++a) {
    const auto x = g->x();
    std::size_t j = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
      if (std::abs(x[i] - bp.q[a]) < std::abs(x[j] - bp.q[a])) j = i;
    spacing = std::max(spacing, g->jac()[j] * g->h());
  }
  check_scale(bp.sigma, spacing);

  const double p2 = bp.p[0] * bp.p[0] + bp.p[1] * bp.p[1] + bp.p[2] * bp.p[2];
  // (<p> - 1)/|p|^2 written without the 0/0 at p = 0
  const double coef = 1.0 / (std::sqrt(1.0 + p2) + 1.0);
  const double amp = std::exp(0.5 * bp.sigma), es = std::exp(bp.sigma);
  const double amp_r = std::exp(1.5 * bp.sigma);
  BoxState s(g);
  kernels::parallel::for_each(g->size(), [&](std::size_t idx) {
    const auto x = g->point(idx);
    const Vec3 z{x[0] - bp.q[0], x[1] - bp.q[1], x[2] - bp.q[2]};
    const double pz = bp.p[0] * z[0] + bp.p[1] * z[1] + bp.p[2] * z[2];
    const Vec3 y{z[0] + coef * pz * bp.p[0], z[1] + coef * pz * bp.p[1], z[2] + coef * pz * bp.p[2]};
    const double ry = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
    s.u1.v[idx] = amp * eval_W(3, es * ry);
    if (p2 > 0.0 && ry > 0.0) {
      // grad_y W_sigma(y) = amp_r W_r(e^sigma |y|) y/|y|
      const double gr = amp_r * eval_W_r(3, es * ry) / ry;
      s.u2.v[idx] = -gr * (y[0] * bp.p[0] + y[1] * bp.p[1] + y[2] * bp.p[2]);
    }
  });
  return s;
}

}  // namespace critwave
