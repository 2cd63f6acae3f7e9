#pragma once

#include <limits>
#include <vector>

#include "critwave/field.hpp"
#include "critwave/kernels.hpp"

namespace critwave {

// Radial fields are extended beyond r_max by their harmonic continuation
// u(r_max) (r_max/r)^{d-2}; the Hdot^1 and L^{2*} integrals below include
// that exterior part exactly. L^2 integrals have no exterior part.

RadialField radial_derivative(const RadialField& f, kernels::Parity parity = kernels::Parity::even);
std::array<BoxField, 3> box_gradient(const BoxField& f);

double l2_dot(const RadialField& a, const RadialField& b);
double l2_dot(const BoxField& a, const BoxField& b);
double hdot1_dot(const RadialField& a, const RadialField& b);
double hdot1_dot(const BoxField& a, const BoxField& b);
// Hdot^1 product from precomputed r-derivatives.
double hdot1_from_grad(const RadialGrid& g, std::span<const double> a, std::span<const double> a_r,
                       std::span<const double> b, std::span<const double> b_r);
// int |u|^{2*}
double lpow_integral(const RadialField& u);
double lpow_integral(const BoxField& u);

double norm_H2(const RadialState& s);
double norm_H2(const BoxState& s);

// J = int |grad u|^2/2 - |u|^{2*}/2*, K = int |grad u|^2 - |u|^{2*}.
double functional_J(const RadialField& u1);
double functional_J(const BoxField& u1);
double functional_K(const RadialField& u1);
double functional_K(const BoxField& u1);

double energy_E(const RadialState& s);
double energy_E(const BoxState& s);
// <u_t | grad u>; identically zero for radial states.
std::vector<double> momentum_P(const RadialState& s);
Vec3 momentum_P(const BoxState& s);

// e = (|u2|^2 + |grad u1|^2)/2 - |u1|^{2*}/2*
RadialField energy_density(const RadialState& s);
BoxField energy_density(const BoxState& s);

/// Smooth light-cone cutoff w(x) = chi(|x|/radius), chi = 1 on [0, 1.5],
/// chi = 0 on [2, inf). radius = inf gives w = 1.
struct Cutoff {
  double radius = std::numeric_limits<double>::infinity();
  double operator()(double r) const;
  static double chi(double x);
};

std::vector<double> center_of_energy(const RadialState& s, const Cutoff& w = {});
Vec3 center_of_energy(const BoxState& s, const Cutoff& w = {});

// omega(a, b) = <a2|b1> - <a1|b2>
double symplectic_omega(const RadialState& a, const RadialState& b);
double symplectic_omega(const BoxState& a, const BoxState& b);

// ||u||_H^2 restricted to r > R (plus the exterior continuation).
double exterior_energy(const RadialState& s, double R);
// V_w = <w u2 | (r d_r + d/2) u1> and <w u2 | u1>.
double virial_Vw(const RadialState& s, const Cutoff& w);
double equipartition_moment(const RadialState& s, const Cutoff& w);

}  // namespace critwave
