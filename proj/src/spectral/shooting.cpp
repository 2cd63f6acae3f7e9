#include <array>
#include <cmath>
#include <stdexcept>

#include "critwave/aubin.hpp"
#include "critwave/spectral.hpp"

namespace critwave {

namespace {

// y = (u, u'), u'' = -(d-1)/r u' + (k^2 - p W^{p-1}) u
struct RadialOde {
  int d;
  double p, k2;
  std::array<double, 2> operator()(double r, const std::array<double, 2>& y) const {
    const double V = p * std::pow(eval_W(d, r), p - 1.0);
    return {y[1], -(d - 1) / r * y[1] + (k2 - V) * y[0]};
  }
};

std::array<double, 2> rk4(const RadialOde& f, double r0, double r1, std::array<double, 2> y, double h,
                          bool* sign_change) {
  const int steps = static_cast<int>(std::ceil(std::abs(r1 - r0) / h));
  const double dr = (r1 - r0) / steps;
  double r = r0;
  for (int s = 0; s < steps; ++s) {
    const auto k1 = f(r, y);
    const auto k2 = f(r + 0.5 * dr, {y[0] + 0.5 * dr * k1[0], y[1] + 0.5 * dr * k1[1]});
    const auto k3 = f(r + 0.5 * dr, {y[0] + 0.5 * dr * k2[0], y[1] + 0.5 * dr * k2[1]});
    const auto k4 = f(r + dr, {y[0] + dr * k3[0], y[1] + dr * k3[1]});
    const double u_old = y[0];
    y[0] += dr / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    y[1] += dr / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    if (sign_change && u_old * y[0] < 0.0) *sign_change = true;
    r += dr;
  }
  return y;
}

struct Mismatch {
  double value;
  bool nodes;
};

Mismatch mismatch(int d, double k, double r_match, double r_outer, double h) {
  const RadialOde f{d, critical_p(d), k * k};
  // regular series at the origin: u = 1 + c r^2, 2 d c = k^2 - p
  const double r0 = 1e-3;
  const double c = (k * k - critical_p(d)) / (2.0 * d);
  bool nodes = false;
  const auto yl = rk4(f, r0, r_match, {1.0 + c * r0 * r0, 2.0 * c * r0}, h, &nodes);
  // decaying branch u ~ e^{-kr} r^{-(d-1)/2}
  const double m = 0.5 * (d - 1);
  const double u = std::exp(-k * r_outer) * std::pow(r_outer, -m);
  const auto yr = rk4(f, r_outer, r_match, {u, -(k + m / r_outer) * u}, h, &nodes);
  return {yl[1] / yl[0] - yr[1] / yr[0], nodes};
}

}  // namespace

ShootingResult shoot_ground_state(int d, double r_match, double r_outer, double h) {
  // Scan for the node-free bracket, then bisect.
  double lo = 0.0, hi = 0.0;
  double prev_k = 0.1;
  Mismatch prev = mismatch(d, prev_k, r_match, r_outer, h);
  bool found = false;
  for (double k = 0.15; k <= 4.0 + 1e-12; k += 0.05) {
    const Mismatch cur = mismatch(d, k, r_match, r_outer, h);
    if (!prev.nodes && !cur.nodes && prev.value * cur.value < 0.0) {
      lo = prev_k;
      hi = k;
      found = true;
      break;
    }
    prev = cur;
    prev_k = k;
  }
  if (!found) throw std::runtime_error("shoot_ground_state: no bound state bracket found");
  double flo = mismatch(d, lo, r_match, r_outer, h).value;
  int it = 0;
  for (; it < 80 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = mismatch(d, mid, r_match, r_outer, h).value;
    if (fm * flo <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return {0.5 * (lo + hi), r_match, r_outer, it};
}

}  // namespace critwave
