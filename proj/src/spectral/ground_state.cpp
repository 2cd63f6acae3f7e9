#include <cmath>
#include <stdexcept>

#include <Eigen/SparseLU>

#include "critwave/functionals.hpp"
#include "critwave/spectral.hpp"

namespace critwave {

GroundState solve_ground_state(const RadialGridPtr& g) {
  const LplusOperator L(g);
  const Eigen::SparseMatrix<double> A = L.matrix();
  const long n = A.rows();
  Eigen::SparseMatrix<double> I(n, n);
  I.setIdentity();

  // start from a positive bump; the ground state has no nodes
  Eigen::VectorXd x(n);
  const auto r = g->r();
  for (long i = 0; i < n; ++i) x[i] = std::exp(-r[static_cast<std::size_t>(i)]);
  x.normalize();

  double shift = -(L.potential().v[0]);  // below the spectrum
  double lambda = shift;
  int iters = 0;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  auto factor = [&](double mu) {
    lu.compute(A - mu * I);
    if (lu.info() != Eigen::Success) throw std::runtime_error("solve_ground_state: factorization failed");
  };
  factor(shift);
  // plain inverse iteration until the eigenvalue settles
  for (int it = 0; it < 200; ++it, ++iters) {
    Eigen::VectorXd y = lu.solve(x);
    y.normalize();
    const double lam = y.dot(A * y);
    x = y;
    const bool settled = std::abs(lam - lambda) < 1e-6 * std::abs(lam);
    lambda = lam;
    if (settled && it > 3) break;
  }
  // Rayleigh-quotient refinement
  for (int it = 0; it < 6; ++it, ++iters) {
    factor(lambda + 1e-10 * std::abs(lambda));
    Eigen::VectorXd y = lu.solve(x);
    y.normalize();
    lambda = y.dot(A * y);
    x = y;
    if ((A * x - lambda * x).norm() < 1e-14 * std::abs(lambda)) break;
  }
  if (!(lambda < 0.0)) throw std::runtime_error("solve_ground_state: no negative eigenvalue (grid too coarse?)");

  GroundState gs;
  gs.rho = RadialField(g, std::vector<double>(x.data(), x.data() + n));
  double sum = 0.0;
  for (double v : gs.rho.v) sum += v;
  const double sgn = sum < 0.0 ? -1.0 : 1.0;
  const double nrm = std::sqrt(l2_dot(gs.rho, gs.rho));
  for (double& v : gs.rho.v) v *= sgn / nrm;
  gs.k = std::sqrt(-lambda);
  gs.iterations = iters;
  const auto Lr = L.apply(gs.rho);
  const auto res = axpy(Lr, gs.k * gs.k, gs.rho);
  gs.residual = std::sqrt(l2_dot(res, res));
  return gs;
}

}  // namespace critwave
