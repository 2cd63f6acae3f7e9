#include <cmath>

#include "critwave/dynamics.hpp"

namespace critwave {

namespace {

bool usable(const TrajectoryRecord& rec, std::size_t i) {
  return rec.fit_ok[i] && std::isfinite(rec.tau[i]) && std::isfinite(rec.lambda1[i]);
}

}  // namespace

EjectionFit fit_ejection_rate(const TrajectoryRecord& rec, double k, double lo, double hi) {
  EjectionFit f;
  // first contiguous stretch with lo <= dW <= hi and a fit
  std::size_t i0 = 0;
  while (i0 < rec.size() && !(usable(rec, i0) && rec.dW[i0] >= lo && rec.dW[i0] <= hi)) ++i0;
  std::size_t i1 = i0;
  while (i1 < rec.size() && usable(rec, i1) && rec.dW[i1] >= lo && rec.dW[i1] <= hi) ++i1;
  f.points = i1 - i0;
  if (f.points < 5) {
    f.message = "ejection window too short";
    return f;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(f.points);
  for (std::size_t i = i0; i < i1; ++i) {
    const double x = rec.tau[i], y = std::log(std::abs(rec.lambda1[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  f.rate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.rate_over_k = f.rate / k;
  f.tau0 = rec.tau[i0];
  f.tau1 = rec.tau[i1 - 1];
  f.dW_monotone = true;
  for (std::size_t i = i0 + 1; i < i1; ++i)
    if (rec.dW[i] < rec.dW[i - 1]) f.dW_monotone = false;
  const double s0 = rec.sigma[0];
  for (std::size_t i = i0; i < i1; ++i)
    f.sigma_ratio = std::max(f.sigma_ratio, std::abs(rec.sigma[i] - s0) / rec.dW[i]);
  f.lambda1_sign = rec.lambda1[i1 - 1] < 0.0 ? -1 : 1;
  for (std::size_t i = i0; i < i1; ++i)
    if ((rec.lambda1[i] < 0.0 ? -1 : 1) != f.lambda1_sign) f.message = "lambda1 changes sign on the window";
  f.ok = f.message.empty();
  return f;
}

EjectionFit fit_ejection_rate(const TrajectoryRecord& rec, double k, const Thresholds& th) {
  if (rec.size() == 0) return {};
  return fit_ejection_rate(rec, k, 8.0 * rec.dW[0], th.delta_H);
}

OdeResidual modulation_ode_residual(const TrajectoryRecord& rec, double lo, double hi) {
  OdeResidual r;
  for (std::size_t i = 1; i + 1 < rec.size(); ++i) {
    bool ok = true;
    for (std::size_t j = i - 1; j <= i + 1; ++j) ok = ok && usable(rec, j) && rec.dW[j] >= lo && rec.dW[j] <= hi;
    if (!ok) continue;
    const double dtau = rec.tau[i + 1] - rec.tau[i - 1];
    if (!(dtau > 0.0)) continue;
    const double dl1 = (rec.lambda1[i + 1] - rec.lambda1[i - 1]) / dtau;
    const double ds = (rec.sigma[i + 1] - rec.sigma[i - 1]) / dtau;
    const double l2 = rec.lambda2[i];
    if (std::abs(l2) > 0.0) r.max_rel = std::max(r.max_rel, std::abs(dl1 - l2 - ds * rec.lambda1[i]) / std::abs(l2));
    if (rec.gamma_norm[i] > 0.0) r.sigma_tau_over_gamma = std::max(r.sigma_tau_over_gamma, std::abs(ds) / rec.gamma_norm[i]);
    ++r.points;
  }
  return r;
}

LinearCheck linearized_check(const TrajectoryRecord& rec, double k, double a1, double a2, double eps, double cap) {
  LinearCheck c;
  const double floor = eps * std::max(std::abs(a1), std::abs(a2) / k);
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (!usable(rec, i) || std::abs(rec.lambda1[i]) > cap) break;
    const double tau = rec.tau[i];
    const double lin = eps * (a1 * std::cosh(k * tau) + a2 * std::sinh(k * tau) / k);
    c.max_rel = std::max(c.max_rel, std::abs(rec.lambda1[i] - lin) / std::max(std::abs(lin), floor));
    ++c.points;
  }
  return c;
}

int sign_flips(const TrajectoryRecord& rec) {
  int last = 0, flips = 0;
  for (int s : rec.sign_S) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++flips;
    last = s;
  }
  return flips;
}

bool one_pass_violation(const TrajectoryRecord& rec, double delta_star) {
  bool inside = false, exited = false, reentered = false;
  for (double d : rec.dW) {
    if (d < delta_star) {
      if (exited) reentered = true;
      inside = true;
    } else if (inside) {
      exited = true;
      inside = false;
    }
  }
  return reentered && sign_flips(rec) >= 2;
}

}  // namespace critwave
