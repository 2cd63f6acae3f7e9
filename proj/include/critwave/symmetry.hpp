#pragma once

#include "critwave/field.hpp"
#include "critwave/profile.hpp"

namespace critwave {

// (S_a^sigma f)(x) = e^{(d/2+a) sigma} f(e^sigma x), resampled on f's grid.
RadialField scale_field(const RadialField& f, double sigma, double a, Tail tail = Tail::zero);
// (S_{-1}^sigma u1, S_0^sigma u2); preserves the H norm up to interpolation error.
RadialState apply_scaling(const RadialState& s, double sigma);
BoxField scale_field(const BoxField& f, double sigma, double a);
BoxState apply_scaling(const BoxState& s, double sigma);

// (T^c f)(x) = f(x - c) by separable cubic interpolation; zero outside the box.
BoxField apply_translation(const BoxField& f, const Vec3& c);
BoxState apply_translation(const BoxState& s, const Vec3& c);

// Lambda_a f = (x . grad + d/2 + a) f
RadialField generator_Lambda(const RadialField& f, double a);
BoxField generator_Lambda(const BoxField& f, double a);

}  // namespace critwave
