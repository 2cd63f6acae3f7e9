#include <cmath>
#include <vector>

#include <Eigen/SparseCore>

#include "critwave/aubin.hpp"
#include "critwave/spectral.hpp"

namespace critwave {

namespace kp = kernels::parallel;

LplusOperator::LplusOperator(RadialGridPtr g) : grid_(std::move(g)), V_(grid_) {
  const int d = grid_->d();
  const double p = critical_p(d);
  const auto r = grid_->r(), j1 = grid_->jac(), j2 = grid_->jac2();
  const std::size_t n = grid_->n();
  css_.resize(n);
  cs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    V_.v[i] = p * std::pow(eval_W(d, r[i]), p - 1.0);
    // -(f_rr + (d-1) f_r / r), f_r = f_s/r', f_rr = (f_ss - (r''/r') f_s)/r'^2
    css_[i] = -1.0 / (j1[i] * j1[i]);
    cs_[i] = j2[i] / (j1[i] * j1[i] * j1[i]) - (d - 1) / (r[i] * j1[i]);
  }
}

RadialField LplusOperator::apply(const RadialField& f) const {
  const std::size_t n = grid_->n();
  std::vector<double> fs(n), fss(n);
  kp::diff_s(f.v, kernels::Parity::even, grid_->ds(), fs);
  kp::diff2_s(f.v, kernels::Parity::even, grid_->ds(), fss);
  RadialField out(grid_);
  for (std::size_t i = 0; i < n; ++i) out.v[i] = css_[i] * fss[i] + cs_[i] * fs[i] - V_.v[i] * f.v[i];
  return out;
}

Eigen::SparseMatrix<double> LplusOperator::matrix() const {
  const long n = static_cast<long>(grid_->n());
  const double ds = grid_->ds();
  const double c1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
  const double c2[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(5 * n));
  for (long i = 0; i < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    for (int o = -2; o <= 2; ++o) {
      long j = i + o;
      if (j >= n) continue;   // zero beyond r_max
      if (j < 0) j = -j - 1;  // even reflection through the origin
      const double c = css_[iu] * c2[o + 2] / (12.0 * ds * ds) + cs_[iu] * c1[o + 2] / (12.0 * ds);
      t.emplace_back(i, j, c);
    }
    t.emplace_back(i, i, -V_.v[iu]);
  }
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(t.begin(), t.end());
  return A;
}

LplusOperator build_Lplus(const RadialGridPtr& g) { return LplusOperator(g); }

}  // namespace critwave
