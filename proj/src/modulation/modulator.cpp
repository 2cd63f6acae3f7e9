#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "critwave/aubin.hpp"
#include "critwave/functionals.hpp"
#include "critwave/modulation.hpp"
#include "frame.hpp"

namespace critwave {

Modulator::Modulator(std::shared_ptr<const SpectralData> sd, Thresholds th) : sd_(std::move(sd)), th_(th) {
  if (!sd_) throw std::invalid_argument("Modulator: spectral data required");
}

namespace {

constexpr double kAbsFloor = 1e-13;

// Damped Broyden iteration on F(x) = 0 from x0 with initial Jacobian J.
// `eval` returns F and the tolerance to reach at x.
template <class Eval>
bool broyden(Eigen::VectorXd& x, Eigen::MatrixXd J, int max_iters, Eval&& eval, int* iters, double* resid) {
  double tol = 0.0;
  Eigen::VectorXd F = eval(x, &tol);
  for (int it = 0; it < max_iters; ++it) {
    *iters = it;
    *resid = F.cwiseAbs().maxCoeff();
    if (!std::isfinite(*resid)) return false;
    if (*resid <= tol) return true;
    Eigen::VectorXd step = -J.partialPivLu().solve(F);
    double damp = 1.0;
    Eigen::VectorXd xn, Fn;
    double tol_n = 0.0;
    for (int h = 0; h < 8; ++h) {
      xn = x + damp * step;
      Fn = eval(xn, &tol_n);
      if (std::isfinite(Fn.norm()) && Fn.norm() <= F.norm()) break;
      damp *= 0.5;
    }
    const Eigen::VectorXd dx = xn - x, dF = Fn - F;
    if (dx.squaredNorm() > 0.0) J += (dF - J * dx) * dx.transpose() / dx.squaredNorm();
    x = xn;
    F = Fn;
    tol = tol_n;
  }
  *iters = max_iters;
  *resid = F.cwiseAbs().maxCoeff();
  return *resid <= tol;
}

}  // namespace

RadialFit Modulator::fit(const RadialState& s, const FitOptions& opt) const {
  const RadialGridPtr& g = s.grid();
  RadialFit out;
  int sign = 1;
  double sigma = 0.0;
  if (opt.sign && opt.sigma_seed) {
    sign = *opt.sign;
    sigma = *opt.sigma_seed;
  } else {
    const Nearest nr = nearest_soliton(s);
    sign = opt.sign.value_or(nr.sign);
    sigma = opt.sigma_seed.value_or(nr.sigma);
    if (!opt.sign && std::abs(nr.dist_other - nr.dist) < 0.1 * std::max(nr.dist, nr.dist_other)) {
      out.ambiguous = true;
      out.converged = false;
      out.sign = sign;
      out.sigma = sigma;
      out.message = "sign ambiguous: both signs are at comparable distance";
      return out;
    }
  }
  out.sign = sign;

  const RadialField u1_r = radial_derivative(s.u1);
  const double A = hdot1_from_grad(*g, s.u1.v, u1_r.v, s.u1.v, u1_r.v) + l2_dot(s.u2, s.u2);
  const double sg = sign;
  auto eval = [&](const Eigen::VectorXd& x, double* tol) {
    const auto fr = detail::radial_frame(*sd_, g, x[0], false);
    const RadialField v1 = axpy(s.u1, -sg, fr.W);
    const auto ov = detail::soliton_overlap(g, s.u1.v, u1_r.v, x[0]);
    const double vnorm = std::sqrt(std::max(0.0, A - 2.0 * sg * ov.B + ov.C));
    *tol = opt.tol_orth * vnorm + kAbsFloor;
    Eigen::VectorXd F(1);
    F[0] = l2_dot(v1, fr.L0rho_1);
    return F;
  };
  Eigen::VectorXd x(1);
  x[0] = sigma;
  Eigen::MatrixXd J(1, 1);
  J(0, 0) = -sg * sd_->b_W;
  double resid = 0.0;
  out.converged = broyden(x, J, opt.max_iters, eval, &out.newton_iters, &resid);
  out.sigma = x[0];
  out.orth_residual = resid;
  if (!std::isfinite(out.sigma) || std::abs(out.sigma) > 20.0) {
    out.converged = false;
    out.message = "scale left the representable range";
    return out;
  }
  const auto fr = detail::radial_frame(*sd_, g, out.sigma, true);
  out.v = RadialState(axpy(s.u1, -sg, fr.W), s.u2);
  out.v_norm = std::sqrt(norm_H2(out.v));
  out.lambda1 = l2_dot(out.v.u1, fr.rho_1);
  out.lambda2 = l2_dot(s.u2, fr.rho_0);
  if (!out.converged) out.message = "no convergence within max_iters";
  return out;
}

BoxFit Modulator::fit(const BoxState& s, const FitOptions& opt) const {
  const BoxGridPtr& g = s.grid();
  BoxFit out;
  // seeds: centre of |u|^6, amplitude at the peak
  Vec3 c{0.0, 0.0, 0.0};
  double sigma = 0.0;
  {
    const auto w = g->weights();
    double mass = 0.0, peak = 0.0;
    Vec3 m{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < g->size(); ++i) {
      const double u = s.u1.v[i];
      const double a = w[i] * u * u * u * u * u * u;
      const auto x = g->point(i);
      for (int j = 0; j < 3; ++j) m[j] += a * x[j];
      mass += a;
      peak = std::max(peak, std::abs(u));
    }
    if (mass > 0.0)
      for (int j = 0; j < 3; ++j) c[j] = m[j] / mass;
    if (peak > 0.0) sigma = 2.0 * std::log(peak);
  }
  if (opt.c_seed) c = *opt.c_seed;
  if (opt.sigma_seed) sigma = *opt.sigma_seed;

  const auto grad_u = box_gradient(s.u1);
  const double A = norm_H2(s);
  int sign = 1;
  if (opt.sign) {
    sign = *opt.sign;
  } else {
    const auto ov = detail::soliton_overlap(g, grad_u, sigma, c);
    const double dp = std::sqrt(std::max(0.0, A - 2.0 * ov.B + ov.C));
    const double dm = std::sqrt(std::max(0.0, A + 2.0 * ov.B + ov.C));
    sign = dp <= dm ? 1 : -1;
    if (std::abs(dp - dm) < 0.1 * std::max(dp, dm)) {
      out.ambiguous = true;
      out.sigma = sigma;
      out.c = c;
      out.sign = sign;
      out.message = "sign ambiguous: both signs are at comparable distance";
      return out;
    }
  }
  out.sign = sign;
  const double sg = sign;

  auto eval = [&](const Eigen::VectorXd& x, double* tol) {
    const Vec3 cc{x[1], x[2], x[3]};
    const auto fr = detail::box_frame(*sd_, g, x[0], cc, false);
    const BoxField v1 = axpy(s.u1, -sg, fr.W);
    const auto ov = detail::soliton_overlap(g, grad_u, x[0], cc);
    const double vnorm = std::sqrt(std::max(0.0, A - 2.0 * sg * ov.B + ov.C));
    *tol = opt.tol_orth * vnorm + kAbsFloor;
    Eigen::VectorXd F(4);
    F[0] = l2_dot(v1, fr.L0rho_1);
    for (int j = 0; j < 3; ++j) F[j + 1] = l2_dot(v1, fr.drho_1[j]);
    return F;
  };
  Eigen::VectorXd x(4);
  x << sigma, c[0], c[1], c[2];
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(4, 4);
  J(0, 0) = -sg * sd_->b_W;
  for (int j = 1; j < 4; ++j) J(j, j) = sg * std::exp(sigma) * sd_->a_W;
  double resid = 0.0;
  out.converged = broyden(x, J, opt.max_iters, eval, &out.newton_iters, &resid);
  out.sigma = x[0];
  out.c = {x[1], x[2], x[3]};
  out.orth_residual = resid;
  if (!x.allFinite() || std::abs(out.sigma) > 20.0) {
    out.converged = false;
    out.message = "parameters left the representable range";
    return out;
  }
  const auto fr = detail::box_frame(*sd_, g, out.sigma, out.c, true);
  out.v = BoxState(axpy(s.u1, -sg, fr.W), s.u2);
  out.v_norm = std::sqrt(norm_H2(out.v));
  out.lambda1 = l2_dot(out.v.u1, fr.rho_1);
  out.lambda2 = l2_dot(s.u2, fr.rho_0);
  if (!out.converged) out.message = "no convergence within max_iters";
  return out;
}

std::vector<RadialField> Modulator::orthogonality_directions(const RadialGridPtr& g, double sigma) const {
  return {detail::radial_frame(*sd_, g, sigma, false).L0rho_1};
}

std::vector<BoxField> Modulator::orthogonality_directions(const BoxGridPtr& g, double sigma, const Vec3& c) const {
  auto fr = detail::box_frame(*sd_, g, sigma, c, false);
  return {std::move(fr.L0rho_1), std::move(fr.drho_1[0]), std::move(fr.drho_1[1]), std::move(fr.drho_1[2])};
}

ModeSplit Modulator::split_modes(const RadialFit& f) const {
  const RadialGridPtr& g = f.v.grid();
  const double k = sd_->k;
  const auto fr = detail::radial_frame(*sd_, g, f.sigma, true);
  ModeSplit ms;
  ms.lambda1 = l2_dot(f.v.u1, fr.rho_1);
  ms.lambda2 = l2_dot(f.v.u2, fr.rho_0);
  ms.lambda_plus = std::sqrt(0.5 * k) * (ms.lambda1 + ms.lambda2 / k);
  ms.lambda_minus = std::sqrt(0.5 * k) * (ms.lambda1 - ms.lambda2 / k);
  ms.alpha = l2_dot(f.v.u1, fr.L0rho_1);
  // mu = 0 for radial states
  // lambda+ g+ + lambda- g- = (lambda1 rho, lambda2 rho) in the frame
  ms.gamma = RadialState(axpy(f.v.u1, -ms.lambda1, fr.rho_m1), axpy(f.v.u2, -ms.lambda2, fr.rho_0));
  const double p = critical_p(g->d());
  const auto w = g->weights();
  double pot = 0.0;
  for (std::size_t i = 0; i < g->n(); ++i) {
    pot += w[i] * p * std::pow(std::abs(fr.W.v[i]), p - 1.0) * ms.gamma.u1.v[i] * ms.gamma.u1.v[i];
  }
  ms.gamma_norm2 = norm_H2(ms.gamma);
  ms.gamma_L = ms.gamma_norm2 - pot;
  return ms;
}

double Modulator::linearized_norm(const ModeSplit& ms, double k) {
  const double e2 = 0.5 * (k * k * ms.lambda1 * ms.lambda1 + ms.lambda2 * ms.lambda2) + 0.5 * ms.gamma_L +
                    ms.alpha * ms.alpha + ms.mu[0] * ms.mu[0] + ms.mu[1] * ms.mu[1] + ms.mu[2] * ms.mu[2];
  return std::sqrt(std::max(0.0, e2));
}

double Modulator::superquadratic_C(const RadialField& v1, double sigma, int sign) const {
  const RadialGridPtr& g = v1.grid;
  const int d = g->d();
  const double q = critical_exponent(d), p = critical_p(d);
  const RadialField W = sample_W(g, sigma);
  const double sg = sign;
  auto integrand = [&](double Wv, double v) {
    return std::pow(std::abs(sg * Wv + v), q) - std::pow(Wv, q) - q * sg * std::pow(Wv, p) * v -
           0.5 * q * p * std::pow(Wv, p - 1.0) * v * v;
  };
  const auto w = g->weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < g->n(); ++i) sum += w[i] * integrand(W.v[i], v1.v[i]);
  // both factors are harmonic beyond r_max, so the integrand decays like r^{-2d}
  const double R = g->r_max();
  sum += g->sphere_area() * integrand(g->edge_value(W.v), g->edge_value(v1.v)) * std::pow(R, d) / d;
  return sum / q;
}

}  // namespace critwave
