#include "critwave/field.hpp"

#include <cmath>

namespace critwave {

namespace {

template <class F>
F axpy_impl(const F& a, double c, const F& b) {
  if (a.v.size() != b.v.size()) throw std::invalid_argument("axpy: fields live on different grids");
  F out = a;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += c * b.v[i];
  return out;
}

template <class F>
F scaled_impl(const F& a, double c) {
  F out = a;
  for (double& x : out.v) x *= c;
  return out;
}

template <class F>
bool finite_impl(const F& f) {
  for (double x : f.v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

RadialField axpy(const RadialField& a, double c, const RadialField& b) { return axpy_impl(a, c, b); }
BoxField axpy(const BoxField& a, double c, const BoxField& b) { return axpy_impl(a, c, b); }
RadialState axpy(const RadialState& a, double c, const RadialState& b) {
  return {axpy_impl(a.u1, c, b.u1), axpy_impl(a.u2, c, b.u2)};
}
BoxState axpy(const BoxState& a, double c, const BoxState& b) {
  return {axpy_impl(a.u1, c, b.u1), axpy_impl(a.u2, c, b.u2)};
}
RadialField scaled(const RadialField& a, double c) { return scaled_impl(a, c); }
BoxField scaled(const BoxField& a, double c) { return scaled_impl(a, c); }
RadialState scaled(const RadialState& a, double c) { return {scaled_impl(a.u1, c), scaled_impl(a.u2, c)}; }
BoxState scaled(const BoxState& a, double c) { return {scaled_impl(a.u1, c), scaled_impl(a.u2, c)}; }
bool all_finite(const RadialState& s) { return finite_impl(s.u1) && finite_impl(s.u2); }
bool all_finite(const BoxState& s) { return finite_impl(s.u1) && finite_impl(s.u2); }

}  // namespace critwave
