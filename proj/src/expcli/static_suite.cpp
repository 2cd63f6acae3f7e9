#include <chrono>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "critwave/aubin.hpp"
#include "critwave/expcli.hpp"
#include "critwave/functionals.hpp"

namespace critwave {

namespace {

using clk = std::chrono::steady_clock;

struct Recorder {
  std::vector<CheckResult>& out;
  clk::time_point t0 = clk::now();
  void start() { t0 = clk::now(); }
  // pass when value <= tol
  void below(const std::string& name, double value, double tol, const std::string& detail = "") {
    add(name, std::isfinite(value) && value <= tol, value, tol, detail);
  }
  void add(const std::string& name, bool pass, double value, double tol, const std::string& detail = "") {
    const double s = std::chrono::duration<double>(clk::now() - t0).count();
    out.push_back({name, pass, value, tol, detail, s});
    t0 = clk::now();
  }
};

std::string num(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.6g", x);
  return b;
}

// Radial Gaussian mixture, both components, scaled to ||.||_H = amp.
RadialState random_radial(const RadialGridPtr& g, std::mt19937_64& rng, double amp) {
  std::normal_distribution<double> N;
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  RadialState v(g);
  const auto r = g->r();
  for (int t = 0; t < 3; ++t) {
    const double a = std::exp(U(rng)), c1 = N(rng), c2 = N(rng);
    for (std::size_t i = 0; i < g->n(); ++i) {
      const double e = std::exp(-r[i] * r[i] / (a * a));
      v.u1.v[i] += c1 * e;
      v.u2.v[i] += c2 * e;
    }
  }
  return scaled(v, amp / std::sqrt(norm_H2(v)));
}

// Removes the span of dirs from f in the L^2 pairing (Gram solve).
template <class Field>
Field project_out(Field f, const std::vector<Field>& dirs) {
  const std::size_t n = dirs.size();
  Eigen::MatrixXd G(n, n);
  Eigen::VectorXd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    b[i] = l2_dot(f, dirs[i]);
    for (std::size_t j = 0; j < n; ++j) G(i, j) = l2_dot(dirs[i], dirs[j]);
  }
  const Eigen::VectorXd x = G.ldlt().solve(b);
  for (std::size_t i = 0; i < n; ++i) f = axpy(f, -x[i], dirs[i]);
  return f;
}

void ground_state_checks(Recorder& rec, const Lab& lab, const StaticOptions& opt) {
  const int d = lab.config().d;
  const auto g = RadialGrid::stretched(d, opt.radial_n, lab.config().spectral_r_max, lab.config().spectral_core);
  const RadialField W = sample_W(g);
  const double G = hdot1_dot(W, W);
  const double K = functional_K(W), J = functional_J(W);
  const double kr = std::abs(K) / G;
  rec.below("ground_state.K_over_gradW2", kr, 1e-6,
            kr <= 1e-6 ? "n=" + std::to_string(opt.radial_n)
                       : "K(W) not converged at n=" + std::to_string(opt.radial_n) + ": |K|/|grad W|^2 = " + num(kr) +
                             ", refine the radial grid");
  rec.below("ground_state.J_identity", std::abs(J - G / d) / J, 1e-8);
}

void spectral_checks(Recorder& rec, const Lab& lab) {
  const SpectralData& sd = lab.spectral();
  rec.below("spectral.eigen_residual", sd.eig_residual, 1e-6);
  const double ks = shoot_ground_state(sd.d).k;
  rec.below("spectral.k_vs_shooting", std::abs(sd.k - ks) / sd.k, 1e-4, "k=" + num(sd.k) + " shooting=" + num(ks));
  rec.add("spectral.a_W_positive", sd.a_W > 0.0, sd.a_W, 0.0);
  rec.add("spectral.b_W_positive", sd.b_W > 0.0, sd.b_W, 0.0);
  rec.below("spectral.b_W_formulas", std::abs(sd.b_W - sd.b_W_alt) / sd.b_W, 1e-3,
            num(sd.b_W) + " vs " + num(sd.b_W_alt));
  rec.below("spectral.omega_gplus_gminus", std::abs(symplectic_omega(sd.g_plus, sd.g_minus) - 1.0), 1e-8);
}

void coercivity_checks(Recorder& rec, const Lab& lab, const StaticOptions& opt) {
  const auto rep = coercivity_probe(lab.spectral(), opt.coercivity_probes, opt.seed);
  rec.add("coercivity.ratio_interval", rep.c_low > 0.0 && std::isfinite(rep.c_high), rep.c_low, 0.0,
          "probes=" + std::to_string(rep.ratios.size()) + " min=" + num(rep.c_low) + " max=" + num(rep.c_high));
}

void modulation_checks(Recorder& rec, const Lab& lab, const StaticOptions& opt) {
  const Modulator& M = lab.modulator();
  const SpectralData& sd = lab.spectral();
  const RadialGridPtr g = sd.grid;
  const double k = sd.k;
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> N;
  std::uniform_real_distribution<double> U(-1.0, 1.0);

  // radial round trips
  double worst_p = 0.0, worst_v = 0.0;
  int failed = 0;
  for (int i = 0; i < opt.round_trips; ++i) {
    const int sign = (i % 2) ? 1 : -1;
    const double sigma = 0.6 * U(rng);
    RadialState v = random_radial(g, rng, 1e-3 * (0.2 + std::abs(N(rng))));
    v.u1 = project_out(v.u1, M.orthogonality_directions(g, sigma));
    const RadialState u(axpy(scaled(sample_W(g, sigma), sign), 1.0, v.u1), v.u2);
    const RadialFit f = M.fit(u);
    if (!f.converged || f.sign != sign) {
      ++failed;
      continue;
    }
    worst_p = std::max(worst_p, std::abs(f.sigma - sigma));
    worst_v = std::max(worst_v, std::sqrt(norm_H2(axpy(f.v, -1.0, v))));
  }
  rec.add("modulation.round_trip_radial", failed == 0 && worst_p <= 1e-6 && worst_v <= 1e-6, std::max(worst_p, worst_v),
          1e-6, std::to_string(opt.round_trips) + " trials, failed=" + std::to_string(failed) + " param=" + num(worst_p) +
                    " v=" + num(worst_v));

  // box round trips with translation
  const auto bg = Box3DGrid::uniform(40, 10.0);
  worst_p = worst_v = 0.0;
  failed = 0;
  const int nbox = opt.box_round_trips;
  for (int i = 0; i < nbox; ++i) {
    const int sign = (i % 2) ? 1 : -1;
    BoostParams bp;
    bp.sigma = 0.3 * U(rng);
    for (auto& c : bp.q) c = 0.5 * U(rng);
    BoxState v(bg);
    const double a = 0.8 + 0.4 * U(rng);
    Vec3 off{0.3 * U(rng), 0.3 * U(rng), 0.3 * U(rng)};
    const double c1 = N(rng), c2 = N(rng);
    for (std::size_t j = 0; j < bg->size(); ++j) {
      const auto x = bg->point(j);
      double r2 = 0.0;
      for (int q = 0; q < 3; ++q) r2 += (x[q] - bp.q[q] - off[q]) * (x[q] - bp.q[q] - off[q]);
      const double e = std::exp(-r2 / (a * a));
      v.u1.v[j] = c1 * e;
      v.u2.v[j] = c2 * e;
    }
    v = scaled(v, 1e-3 / std::sqrt(norm_H2(v)));
    v.u1 = project_out(v.u1, M.orthogonality_directions(bg, bp.sigma, bp.q));
    const BoxState w = sample_W_family(bp, bg);
    const BoxState u(axpy(scaled(w.u1, sign), 1.0, v.u1), v.u2);
    const BoxFit f = M.fit(u);
    if (!f.converged || f.sign != sign) {
      ++failed;
      continue;
    }
    double dp = std::abs(f.sigma - bp.sigma);
    for (int q = 0; q < 3; ++q) dp = std::max(dp, std::abs(f.c[q] - bp.q[q]));
    worst_p = std::max(worst_p, dp);
    worst_v = std::max(worst_v, std::sqrt(norm_H2(axpy(f.v, -1.0, v))));
  }
  rec.add("modulation.round_trip_box", failed == 0 && worst_p <= 1e-6 && worst_v <= 1e-6, std::max(worst_p, worst_v), 1e-6,
          std::to_string(nbox) + " trials, failed=" + std::to_string(failed) + " param=" + num(worst_p) + " v=" + num(worst_v));

  // d_W on the manifold
  double worst_d = 0.0;
  for (double sigma : {-0.5, 0.0, 0.4})
    for (int sign : {1, -1}) {
      const RadialState s(scaled(sample_W(g, sigma), sign), RadialField(g));
      worst_d = std::max(worst_d, M.distance(s).dW);
    }
  {
    BoostParams bp;
    bp.sigma = 0.1;
    bp.q = {0.2, 0.0, 0.0};
    worst_d = std::max(worst_d, M.distance(sample_W_family(bp, bg)).dW);
  }
  rec.below("modulation.dW_on_manifold", worst_d, 1e-6);

  // d_W^2 against k^2 eps^2 / 2 on W + eps rho
  double worst_rel = 0.0;
  for (double eps : {1e-3, 1e-4}) {
    const RadialState s(axpy(sample_W(g), eps, sd.rho), RadialField(g));
    const double dW = M.distance(s).dW;
    worst_rel = std::max(worst_rel, std::abs(dW * dW / (0.5 * k * k * eps * eps) - 1.0));
  }
  rec.below("modulation.dW_squared_vs_linear", worst_rel, 0.02, "reference k^2 eps^2 / 2");

  // energy expansion E(W+v) - J(W) = -k l+ l- + <L gamma|gamma>/2 - C(v)
  {
    RadialState v = random_radial(g, rng, 1e-3);
    v.u1 = project_out(v.u1, M.orthogonality_directions(g, 0.0));
    const RadialState u(axpy(sample_W(g), 1.0, v.u1), v.u2);
    const RadialFit f = M.fit(u);
    const ModeSplit ms = M.split_modes(f);
    const double lhs = energy_E(u) - functional_J(sample_W(g));
    const double rhs = -k * ms.lambda_plus * ms.lambda_minus + 0.5 * ms.gamma_L - M.superquadratic_C(f.v.u1, f.sigma, f.sign);
    rec.below("modulation.energy_expansion", std::abs(lhs - rhs), 1e-8);
  }

  // sign functional and region spot values
  {
    const RadialState half(scaled(sample_W(g), 0.5), RadialField(g));
    const RadialState big(scaled(sample_W(g), 1.5), RadialField(g));
    const RadialState zero(g);
    const int s_half = M.sign_functional(half).value, s_big = M.sign_functional(big).value;
    const int s_zero = M.sign_functional(zero).value;
    const RadialState W(sample_W(g), RadialField(g));
    const RegionFlags fw = M.region_predicates(W);
    const bool ok = s_half == 1 && s_big == -1 && s_zero == 1 && fw.in_H_star && !fw.in_H_X;
    rec.add("modulation.sign_functional_examples", ok, ok ? 1.0 : 0.0, 1.0,
            "S(W/2)=" + std::to_string(s_half) + " S(3W/2)=" + std::to_string(s_big) + " S(0)=" + std::to_string(s_zero) +
                " W in H_*=" + std::to_string(fw.in_H_star) + " in H_X=" + std::to_string(fw.in_H_X));
  }
}

void boost_checks(Recorder& rec) {
  const auto g = Box3DGrid::far_field();
  const double JW = functional_J(sample_W_family(BoostParams{}, g).u1);
  double worst = 0.0;
  std::string detail;
  for (double p : {0.1, 0.2, 0.4}) {
    BoostParams bp;
    bp.p = {p, 0.0, 0.0};
    const BoxState s = sample_W_family(bp, g);
    const double E = energy_E(s);
    const Vec3 P = momentum_P(s);
    const double P2 = P[0] * P[0] + P[1] * P[1] + P[2] * P[2];
    const double rel = std::abs(E * E - P2 - JW * JW) / (JW * JW);
    worst = std::max(worst, rel);
    detail += "p=" + num(p) + ":" + num(rel) + " ";
  }
  rec.below("boost.E2_minus_P2", worst, 1e-3, detail);
}

}  // namespace

bool StaticReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json StaticReport::to_json() const {
  nlohmann::json j;
  j["all_pass"] = all_pass();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"value", c.value},
                           {"tolerance", c.tolerance},
                           {"detail", c.detail},
                           {"seconds", c.seconds}});
  return j;
}

StaticReport run_static_suite(const Lab& lab, const StaticOptions& opt) {
  StaticReport rep;
  Recorder rec{rep.checks};
  ground_state_checks(rec, lab, opt);
  spectral_checks(rec, lab);
  coercivity_checks(rec, lab, opt);
  modulation_checks(rec, lab, opt);
  if (opt.include_boost) boost_checks(rec);
  return rep;
}

}  // namespace critwave
