#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "critwave/aubin.hpp"
#include "critwave/functionals.hpp"
#include "critwave/spectral.hpp"

namespace critwave {

double coercivity_ratio(const SpectralData& sd, const RadialField& f) {
  const LplusOperator L(sd.grid);
  const double grad2 = hdot1_dot(f, f);
  double pot = 0.0;
  const auto w = sd.grid->weights();
  for (std::size_t i = 0; i < f.v.size(); ++i) pot += w[i] * L.potential().v[i] * f.v[i] * f.v[i];
  const double a = l2_dot(f, sd.Lambda0_rho);
  // <f|grad rho> = 0 for radial f
  return (grad2 - pot + a * a) / grad2;
}

CoercivityReport coercivity_probe(const SpectralData& sd, std::size_t n_samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const auto r = sd.grid->r();
  CoercivityReport rep;
  rep.ratios.reserve(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    RadialField f(sd.grid);
    if (s % 2 == 0) {
      // even Gaussian bump pair at +-r0
      const double r0 = 6.0 * U(rng), w = 0.3 + 2.7 * U(rng);
      for (std::size_t i = 0; i < f.v.size(); ++i) {
        const double a = (r[i] - r0) / w, b = (r[i] + r0) / w;
        f.v[i] = std::exp(-a * a) + std::exp(-b * b);
      }
    } else {
      // low-order polynomial in r^2 times algebraic or Gaussian decay
      const double c0 = 2 * U(rng) - 1, c1 = 2 * U(rng) - 1, c2 = 2 * U(rng) - 1;
      const double ell = 0.5 + 3.0 * U(rng);
      const bool algebraic = U(rng) < 0.5;
      for (std::size_t i = 0; i < f.v.size(); ++i) {
        const double x = r[i] * r[i] / (ell * ell);
        const double poly = c0 + c1 * x + c2 * x * x;
        f.v[i] = poly * (algebraic ? std::pow(1.0 + x, -3.0) : std::exp(-x));
      }
    }
    f = axpy(f, -l2_dot(f, sd.rho), sd.rho);
    rep.ratios.push_back(coercivity_ratio(sd, f));
  }
  const auto [mn, mx] = std::minmax_element(rep.ratios.begin(), rep.ratios.end());
  rep.c_low = *mn;
  rep.c_high = *mx;
  rep.worst = static_cast<std::size_t>(mn - rep.ratios.begin());

  // Near-null direction: minimize the ratio over span{W', Lambda_0 rho, bumps},
  // all projected off rho. The minimizer leans on W', the zero mode of L+.
  std::vector<RadialField> basis{sd.Wprime, sd.Lambda0_rho};
  for (double w : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    RadialField b(sd.grid);
    for (std::size_t i = 0; i < b.v.size(); ++i) b.v[i] = std::exp(-r[i] * r[i] / (w * w));
    basis.push_back(b);
  }
  for (auto& b : basis) b = axpy(b, -l2_dot(b, sd.rho), sd.rho);
  const std::size_t m = basis.size();
  const LplusOperator L(sd.grid);
  const auto wt = sd.grid->weights();
  Eigen::MatrixXd Q(m, m), G(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      const double g = hdot1_dot(basis[a], basis[b]);
      double pot = 0.0;
      for (std::size_t i = 0; i < wt.size(); ++i) pot += wt[i] * L.potential().v[i] * basis[a].v[i] * basis[b].v[i];
      const double q = g - pot + l2_dot(basis[a], sd.Lambda0_rho) * l2_dot(basis[b], sd.Lambda0_rho);
      Q(a, b) = Q(b, a) = q;
      G(a, b) = G(b, a) = g;
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Q, G);
  rep.near_null_ratio = es.eigenvalues()[0];
  return rep;
}

}  // namespace critwave
