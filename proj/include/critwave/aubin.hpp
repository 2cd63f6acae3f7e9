#pragma once

#include <span>

#include "critwave/field.hpp"

namespace critwave {

// p = (d+2)/(d-2) and 2* = 2d/(d-2).
double critical_p(int d);
double critical_exponent(int d);

// W(r) = (1 + r^2/(d(d-2)))^{1-d/2} and its radial derivatives.
double eval_W(int d, double r);
double eval_W(int d, std::span<const double> x);
double eval_W_r(int d, double r);
double eval_W_rr(int d, double r);
// W' = Lambda_{-1} W = r W_r + (d/2 - 1) W, and its r-derivative.
double eval_Wprime(int d, double r);
double eval_Wprime_r(int d, double r);

// W_sigma(r) = e^{(d/2-1) sigma} W(e^sigma r) and d/dr of it, sampled on the grid.
RadialField sample_W(const RadialGridPtr& g, double sigma = 0.0);
RadialField sample_W_r(const RadialGridPtr& g, double sigma = 0.0);
RadialField sample_Wprime(const RadialGridPtr& g);

/// (W_sigma(p,q), -grad W_sigma(p,q) . p / <p>). Radial grids accept only
/// p = 0, q = 0. Throws if the scale e^{-sigma} is below one grid spacing.
RadialState sample_W_family(const BoostParams& bp, const RadialGridPtr& g);
BoxState sample_W_family(const BoostParams& bp, const BoxGridPtr& g);

}  // namespace critwave
