#include "critwave/profile.hpp"

#include <cmath>
#include <stdexcept>

#include "critwave/functionals.hpp"

namespace critwave {

RadialProfile::RadialProfile(RadialGridPtr g, std::vector<double> f, std::vector<double> f_r,
                             kernels::Parity parity, Tail tail)
    : grid_(std::move(g)), f_(std::move(f)), fs_(std::move(f_r)), tail_(tail) {
  if (f_.size() != grid_->n() || fs_.size() != grid_->n()) {
    throw std::invalid_argument("RadialProfile: length does not match grid");
  }
  par_ = parity == kernels::Parity::even ? 1.0 : -1.0;
  const auto jac = grid_->jac();
  for (std::size_t i = 0; i < fs_.size(); ++i) fs_[i] *= jac[i];
  edge_ = grid_->edge_value(f_);
}

RadialProfile RadialProfile::from_field(const RadialField& f, kernels::Parity parity, Tail tail) {
  return RadialProfile(f.grid, f.v, radial_derivative(f, parity).v, parity, tail);
}

double RadialProfile::eval(double r, double* dfdr) const {
  const RadialGrid& g = *grid_;
  const int d = g.d();
  r = std::abs(r);
  if (r > g.r_max()) {
    if (tail_ == Tail::zero) {
      if (dfdr) *dfdr = 0.0;
      return 0.0;
    }
    const double ratio = std::pow(g.r_max() / r, d - 2);
    if (dfdr) *dfdr = -(d - 2) * edge_ * ratio / r;
    return edge_ * ratio;
  }
  const double ds = g.ds();
  const double s = g.s_of_r(r);
  const std::size_t n = f_.size();
  const double t = s / ds - 0.5;
  double f0, d0, f1, d1, u;
  if (t < 0.0) {
    // between the mirror image of node 0 and node 0
    f0 = par_ * f_[0];
    d0 = -par_ * fs_[0];
    f1 = f_[0];
    d1 = fs_[0];
    u = t + 1.0;
  } else {
    std::size_t i = static_cast<std::size_t>(t);
    if (i >= n - 1) i = n - 2;  // extrapolate the last cell up to r_max
    f0 = f_[i];
    d0 = fs_[i];
    f1 = f_[i + 1];
    d1 = fs_[i + 1];
    u = t - static_cast<double>(i);
  }
  const double u2 = u * u, u3 = u2 * u;
  const double val = (2 * u3 - 3 * u2 + 1) * f0 + (u3 - 2 * u2 + u) * ds * d0 + (-2 * u3 + 3 * u2) * f1 +
                     (u3 - u2) * ds * d1;
  if (dfdr) {
    const double dval_du = (6 * u2 - 6 * u) * f0 + (3 * u2 - 4 * u + 1) * ds * d0 + (-6 * u2 + 6 * u) * f1 +
                           (3 * u2 - 2 * u) * ds * d1;
    *dfdr = dval_du / ds / g.drds(s);
  }
  return val;
}

double RadialProfile::deriv(double r) const {
  double dr = 0.0;
  eval(r, &dr);
  return r < 0.0 ? -dr : dr;
}

RadialField RadialProfile::resample(const RadialGridPtr& g) const { return resample_scaled(g, 0.0, 0.0); }

RadialField RadialProfile::resample_scaled(const RadialGridPtr& g, double sigma, double a) const {
  RadialField out(g);
  const double amp = std::exp((0.5 * g->d() + a) * sigma), es = std::exp(sigma);
  const auto r = g->r();
  kernels::parallel::for_each(g->n(), [&](std::size_t i) { out.v[i] = amp * (*this)(es * r[i]); });
  return out;
}

}  // namespace critwave
