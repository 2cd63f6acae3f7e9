#pragma once

#include <vector>

#include "critwave/field.hpp"
#include "critwave/kernels.hpp"

namespace critwave {

enum class Tail { zero, harmonic };

/// Continuous radial function built from nodal values and r-derivatives:
/// piecewise cubic Hermite in the computational coordinate s, mirrored by
/// parity through the origin. Beyond r_max it is zero or the harmonic
/// continuation f(r_max) (r_max/r)^{d-2}.
class RadialProfile {
 public:
  RadialProfile() = default;
  RadialProfile(RadialGridPtr g, std::vector<double> f, std::vector<double> f_r,
                kernels::Parity parity = kernels::Parity::even, Tail tail = Tail::zero);
  // Derivatives taken by finite differences on the field's own grid.
  static RadialProfile from_field(const RadialField& f, kernels::Parity parity = kernels::Parity::even,
                                  Tail tail = Tail::zero);

  double operator()(double r) const { return eval(r, nullptr); }
  double deriv(double r) const;
  // value and d/dr in one pass
  double eval(double r, double* dfdr) const;

  RadialField resample(const RadialGridPtr& g) const;
  // S_a^sigma f = e^{(d/2+a) sigma} f(e^sigma r) on grid g.
  RadialField resample_scaled(const RadialGridPtr& g, double sigma, double a) const;

  const RadialGridPtr& grid() const { return grid_; }
  double edge_value() const { return edge_; }

 private:
  RadialGridPtr grid_;
  std::vector<double> f_, fs_;  // values and d/ds
  double par_ = 1.0;
  Tail tail_ = Tail::zero;
  double edge_ = 0.0;
};

}  // namespace critwave
