#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "critwave/aubin.hpp"
#include "critwave/functionals.hpp"
#include "critwave/modulation.hpp"
#include "frame.hpp"

namespace critwave {

namespace {

// Minimum of f on [a, b] by Brent's method.
template <class F>
double minimize_1d(F&& f, double a, double b, double* fmin) {
  boost::uintmax_t iters = 200;
  const auto r = boost::math::tools::brent_find_minima(f, a, b, 30, iters);
  *fmin = r.second;
  return r.first;
}

// Scales whose soliton the grid can represent.
void sigma_range(const RadialGrid& g, double* lo, double* hi) {
  *hi = -std::log(4.0 * g.min_spacing());
  *lo = -std::log(g.r_max() / 8.0);
}

int sign_of(double x) { return x < 0.0 ? -1 : 1; }  // sign 0 = +1

}  // namespace

double Modulator::J_W_on(const RadialGridPtr& g) { return functional_J(sample_W(g)); }

double Modulator::J_W_on(const BoxGridPtr& g) { return functional_J(sample_W_family(BoostParams{}, g).u1); }

Modulator::Nearest Modulator::nearest_soliton(const RadialState& s, std::optional<double> sigma_seed) const {
  const RadialGridPtr& g = s.grid();
  const RadialField u_r = radial_derivative(s.u1);
  const double A = hdot1_from_grad(*g, s.u1.v, u_r.v, s.u1.v, u_r.v) + l2_dot(s.u2, s.u2);
  double lo, hi;
  sigma_range(*g, &lo, &hi);
  auto dist2 = [&](double sigma, int sg) {
    const auto ov = detail::soliton_overlap(g, s.u1.v, u_r.v, sigma);
    return A - 2.0 * sg * ov.B + ov.C;
  };
  const double step = 0.25;
  double best[2] = {1e300, 1e300}, arg[2] = {0.0, 0.0};
  auto scan = [&] {
    for (double sigma = lo; sigma <= hi + 1e-12; sigma += step) {
      const auto ov = detail::soliton_overlap(g, s.u1.v, u_r.v, sigma);
      for (int k = 0; k < 2; ++k) {
        const double v = A - 2.0 * (k == 0 ? 1.0 : -1.0) * ov.B + ov.C;
        if (v < best[k]) {
          best[k] = v;
          arg[k] = sigma;
        }
      }
    }
  };
  double span = step;
  if (sigma_seed) {
    arg[0] = arg[1] = std::clamp(*sigma_seed, lo, hi);
    span = 2.0 * step;
  } else {
    scan();
  }
  double dmin[2], smin[2];
  for (int pass = 0; pass < 2; ++pass) {
    bool edge = false;
    for (int k = 0; k < 2; ++k) {
      const int sg = k == 0 ? 1 : -1;
      double fmin = 0.0;
      const double a = std::max(lo, arg[k] - span), b = std::min(hi, arg[k] + span);
      smin[k] = minimize_1d([&](double x) { return dist2(x, sg); }, a, b, &fmin);
      if (best[k] < fmin) {
        smin[k] = arg[k];
        fmin = best[k];
      }
      dmin[k] = std::sqrt(std::max(0.0, fmin));
      // a warm start that lands on its bracket edge has lost the minimum
      if ((smin[k] - a < 1e-3 && a > lo) || (b - smin[k] < 1e-3 && b < hi)) edge = true;
    }
    if (!sigma_seed || !edge || pass == 1) break;
    span = step;
    scan();
  }
  const int k = dmin[0] <= dmin[1] ? 0 : 1;
  Nearest out;
  out.sign = k == 0 ? 1 : -1;
  out.sigma = smin[k];
  out.dist = dmin[k];
  out.dist_other = dmin[1 - k];
  return out;
}

Modulator::Nearest Modulator::nearest_soliton(const BoxState& s, std::optional<Vec3> c_seed,
                                              std::optional<double> sigma_seed) const {
  const BoxGridPtr& g = s.grid();
  const auto grad_u = box_gradient(s.u1);
  const double A = norm_H2(s);
  const bool seeded = c_seed && sigma_seed;
  Vec3 c = c_seed.value_or(Vec3{0.0, 0.0, 0.0});
  double sigma = sigma_seed.value_or(0.0);
  const double hi = -std::log(g->min_spacing());
  sigma = std::min(sigma, hi);
  auto overlap = [&](double sg, const Vec3& cc) { return detail::soliton_overlap(g, grad_u, sg, cc); };
  const auto ov0 = overlap(sigma, c);
  const int sign = ov0.B >= 0.0 ? 1 : -1;
  auto dist2 = [&](double sg, const Vec3& cc) {
    try {
      const auto ov = overlap(sg, cc);
      return A - 2.0 * sign * ov.B + ov.C;
    } catch (const std::domain_error&) {
      return 1e300;  // scale not resolved near cc
    }
  };
  double f = A - 2.0 * sign * ov0.B + ov0.C;
  // coordinate search: scale, then each centre component
  const int sweeps = seeded ? 1 : 2;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    const double span = seeded ? 0.05 : (sweep == 0 ? 0.5 : 0.1);
    double fm = 0.0;
    const double s_new =
        minimize_1d([&](double x) { return dist2(x, c); }, sigma - span, std::min(hi, sigma + span), &fm);
    if (fm < f) {
      sigma = s_new;
      f = fm;
    }
    for (int j = 0; j < 3; ++j) {
      const double cspan = span * std::exp(-sigma);
      const double c0 = c[j];
      Vec3 cc = c;
      const double c_new = minimize_1d(
          [&](double x) {
            cc[j] = x;
            return dist2(sigma, cc);
          },
          c0 - cspan, c0 + cspan, &fm);
      if (fm < f) {
        c[j] = c_new;
        f = fm;
      }
    }
  }
  Nearest out;
  out.sign = sign;
  out.sigma = sigma;
  out.c = c;
  out.dist = std::sqrt(std::max(0.0, f));
  const auto ov = overlap(sigma, c);
  out.dist_other = std::sqrt(std::max(0.0, A + 2.0 * sign * ov.B + ov.C));
  return out;
}

double Modulator::blend(double d0, double d1, Regime* regime) const {
  const double x = 2.0 * d0 / th_.delta_A;
  if (x <= 1.0) {
    *regime = Regime::inner;
    return d1;
  }
  if (x >= 2.0) {
    *regime = Regime::outer;
    return d0;
  }
  *regime = Regime::blend;
  // chi = 1 on [0,1], 0 on [2, inf), smooth in between
  auto e = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double t = 2.0 - x;
  const double chi = e(t) / (e(t) + e(1.0 - t));
  return chi * d1 + (1.0 - chi) * d0;
}

DistanceReport Modulator::distance(const RadialState& s, std::optional<double> sigma_seed) const {
  DistanceReport rep;
  const Nearest nr = nearest_soliton(s, sigma_seed);
  rep.dist = nr.dist;
  rep.d0 = th_.C_d0 * nr.dist;
  rep.nearest_sign = nr.sign;
  rep.nearest_sigma = nr.sigma;
  const bool ambiguous = std::abs(nr.dist_other - nr.dist) < 0.1 * std::max(nr.dist, nr.dist_other);
  if (rep.d0 < th_.delta_A && !ambiguous) {
    FitOptions opt;
    opt.sign = nr.sign;
    opt.sigma_seed = nr.sigma;
    auto f = std::make_shared<RadialFit>(fit(s, opt));
    rep.fit = *f;
    rep.radial_fit = f;
    if (f->converged) {
      rep.have_fit = true;
      const RadialField Ws = scaled(sample_W(s.grid(), f->sigma), f->sign);
      const double dE = energy_E(s) - functional_J(Ws);
      const double k = sd_->k;
      rep.d1 = std::sqrt(std::max(0.0, dE + k * k * f->lambda1 * f->lambda1));
    }
  }
  if (rep.have_fit) {
    rep.dW = blend(rep.d0, rep.d1, &rep.regime);
  } else {
    rep.dW = rep.d0;
    rep.regime = Regime::outer;
  }
  return rep;
}

DistanceReport Modulator::distance(const BoxState& s) const {
  DistanceReport rep;
  FitOptions opt;
  const BoxFit f = fit(s, opt);
  Nearest nr = f.converged ? nearest_soliton(s, f.c, f.sigma) : nearest_soliton(s);
  rep.dist = nr.dist;
  rep.d0 = th_.C_d0 * nr.dist;
  rep.nearest_sign = nr.sign;
  rep.nearest_sigma = nr.sigma;
  rep.nearest_c = nr.c;
  rep.fit = f;
  if (f.converged && rep.d0 < th_.delta_A) {
    rep.have_fit = true;
    BoostParams bp;
    bp.sigma = f.sigma;
    bp.q = f.c;
    const BoxState Ws = scaled(sample_W_family(bp, s.grid()), f.sign);
    const double dE = energy_E(s) - energy_E(Ws);
    const double k = sd_->k;
    rep.d1 = std::sqrt(std::max(0.0, dE + k * k * f.lambda1 * f.lambda1));
    rep.dW = blend(rep.d0, rep.d1, &rep.regime);
  } else {
    rep.dW = rep.d0;
    rep.regime = Regime::outer;
  }
  return rep;
}

namespace {
// E = J_W exactly is not in H_X; the strict inequality gets a roundoff margin
// so that W itself (dW ~ 1e-7) is classified correctly.
RegionFlags make_flags(double E, double J, double JW, double dW, const Thresholds& th) {
  const double e2 = th.eps_star * th.eps_star;
  RegionFlags f;
  f.in_H_star = E <= JW + e2;
  f.in_H_X = f.in_H_star && E - JW < 0.5 * dW * dW - 1e-12 * std::abs(JW);
  f.in_variational_zone = J < JW + e2 && dW > th.delta_S;
  return f;
}
}  // namespace

SignResult Modulator::sign_functional(const RadialState& s) const { return sign_functional(s, distance(s)); }

SignResult Modulator::sign_functional(const RadialState& s, const DistanceReport& rep) const {
  SignResult r;
  const RegionFlags reg = region_predicates(s, rep);
  if (!reg.in_H_X) return r;
  r.inner_rule = rep.have_fit && rep.dW <= th_.delta_E;
  r.outer_rule = rep.dW >= th_.delta_S;
  if (r.inner_rule) r.inner_value = -sign_of(rep.fit.sign * rep.fit.lambda1);
  if (r.outer_rule) r.outer_value = sign_of(functional_K(s.u1));
  if (r.inner_rule && r.outer_rule) r.consistent = r.inner_value == r.outer_value;
  if (!r.inner_rule && !r.outer_rule) return r;
  r.defined = true;
  r.value = r.inner_rule ? r.inner_value : r.outer_value;
  return r;
}

RegionFlags Modulator::region_predicates(const RadialState& s) const { return region_predicates(s, distance(s)); }

RegionFlags Modulator::region_predicates(const RadialState& s, const DistanceReport& rep) const {
  const double JW = J_W_on(s.grid());
  const double E = energy_E(s);
  return make_flags(E, functional_J(s.u1), JW, rep.dW, th_);
}

RegionFlags Modulator::region_predicates(const BoxState& s) const {
  const DistanceReport rep = distance(s);
  const double JW = J_W_on(s.grid());
  const double E = energy_E(s);
  return make_flags(E, functional_J(s.u1), JW, rep.dW, th_);
}

}  // namespace critwave
