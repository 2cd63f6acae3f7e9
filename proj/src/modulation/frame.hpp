#pragma once

// Soliton-frame test functions sampled in the lab frame. For the frame
// (sigma, c) and a = -1, 0, 1: rho_a = T^c S_a^sigma rho, and L0rho_1 =
// T^c S_1^sigma Lambda_0 rho, drho_1[j] = T^c S_1^sigma d_j rho. These are
// the adjoint images that turn frame pairings into lab-frame pairings.

#include <array>

#include "critwave/field.hpp"
#include "critwave/spectral.hpp"

namespace critwave::detail {

struct RadialFrame {
  RadialField W, W_r, rho_m1, rho_0, rho_1, L0rho_1;
};

RadialFrame radial_frame(const SpectralData& sd, const RadialGridPtr& g, double sigma, bool full = true);

struct BoxFrame {
  BoxField W, rho_m1, rho_0, rho_1, L0rho_1;
  std::array<BoxField, 3> gradW, drho_1;
};

BoxFrame box_frame(const SpectralData& sd, const BoxGridPtr& g, double sigma, const Vec3& c, bool full = true);

// Hdot^1 pairing <grad u | grad W_sigma(. - c)> and ||W_sigma(. - c)||^2_{Hdot^1},
// with W sampled and differentiated by the same stencils as u.
struct SolitonOverlap {
  double B = 0.0, C = 0.0;
};
SolitonOverlap soliton_overlap(const RadialGridPtr& g, std::span<const double> u, std::span<const double> u_r,
                               double sigma);
SolitonOverlap soliton_overlap(const BoxGridPtr& g, const std::array<BoxField, 3>& grad_u, double sigma,
                               const Vec3& c);

}  // namespace critwave::detail
