#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

#include <json.hpp>

#include "critwave/aubin.hpp"
#include "critwave/functionals.hpp"
#include "critwave/spectral.hpp"
#include "critwave/symmetry.hpp"

namespace critwave {

SpectralConstants compute_constants(const RadialField& rho, double k) {
  const RadialGridPtr& g = rho.grid;
  const int d = g->d();
  const double p = critical_p(d);
  const auto r = g->r();
  RadialField Wq(g), Wp(g), w2(g);
  for (std::size_t i = 0; i < g->n(); ++i) {
    const double W = eval_W(d, r[i]);
    const double Wpr = eval_Wprime(d, r[i]);
    Wq.v[i] = std::pow(W, critical_exponent(d) - 1.0);
    Wp.v[i] = Wpr;
    w2.v[i] = std::pow(W, p - 2.0) * Wpr * Wpr;
  }
  SpectralConstants c{};
  c.a_W = l2_dot(Wq, rho) / d;
  c.b_W = l2_dot(Wp, generator_Lambda(rho, 0.0));
  c.b_W_alt = p * (p - 1.0) * l2_dot(w2, rho) / (k * k);
  return c;
}

std::pair<RadialState, RadialState> build_modes(const RadialField& rho, double k) {
  const double c = 1.0 / std::sqrt(2.0 * k);
  RadialState gp(scaled(rho, c), scaled(rho, k * c));
  RadialState gm(scaled(rho, c), scaled(rho, -k * c));
  return {gp, gm};
}

double mode_residual(const LplusOperator& L, const RadialState& g, double lambda) {
  // J L (a, b) = (b, -L+ a)
  const RadialField r1 = axpy(g.u2, -lambda, g.u1);
  RadialField r2 = scaled(L.apply(g.u1), -1.0);
  r2 = axpy(r2, -lambda, g.u2);
  return std::sqrt(norm_H2(RadialState(r1, r2)));
}

SpectralData SpectralData::build(const RadialGridPtr& g, bool with_shooting) {
  SpectralData sd;
  sd.grid = g;
  sd.d = g->d();
  const GroundState gs = solve_ground_state(g);
  sd.rho = gs.rho;
  sd.k = gs.k;
  sd.eig_residual = gs.residual;
  const auto c = compute_constants(sd.rho, sd.k);
  sd.a_W = c.a_W;
  sd.b_W = c.b_W;
  sd.b_W_alt = c.b_W_alt;
  if (with_shooting) sd.k_shoot = shoot_ground_state(sd.d).k;

  sd.rho_r = radial_derivative(sd.rho);
  sd.Wprime = sample_Wprime(g);
  sd.Lambda0_rho = generator_Lambda(sd.rho, 0.0);
  std::tie(sd.g_plus, sd.g_minus) = build_modes(sd.rho, sd.k);

  // rho_rr from the eigen-equation: rho_rr = (k^2 - V) rho - (d-1) rho_r / r
  const LplusOperator L(g);
  const auto r = g->r();
  std::vector<double> rho_rr(g->n());
  for (std::size_t i = 0; i < g->n(); ++i) {
    rho_rr[i] = (sd.k * sd.k - L.potential().v[i]) * sd.rho.v[i] - (sd.d - 1) * sd.rho_r.v[i] / r[i];
  }
  sd.rho_profile = RadialProfile(g, sd.rho.v, sd.rho_r.v, kernels::Parity::even, Tail::zero);
  sd.rho_r_profile = RadialProfile(g, sd.rho_r.v, rho_rr, kernels::Parity::odd, Tail::zero);
  return sd;
}

void write_constants(const std::string& path, const SpectralData& sd) {
  nlohmann::json j;
  j["d"] = sd.d;
  j["k"] = sd.k;
  j["a_W"] = sd.a_W;
  j["b_W"] = sd.b_W;
  j["b_W_alt"] = sd.b_W_alt;
  j["k_shoot"] = sd.k_shoot;
  j["grid"] = sd.grid->describe();
  j["residuals"] = {{"eigen", sd.eig_residual},
                    {"k_rel_diff", std::abs(sd.k - sd.k_shoot) / sd.k},
                    {"b_W_rel_diff", std::abs(sd.b_W - sd.b_W_alt) / sd.b_W}};
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << std::setprecision(17) << j.dump(2) << "\n";
}

ConstantsFile read_constants(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("missing constants file " + path);
  nlohmann::json j;
  is >> j;
  ConstantsFile c;
  c.d = j.at("d").get<int>();
  c.k = j.at("k").get<double>();
  c.a_W = j.at("a_W").get<double>();
  c.b_W = j.at("b_W").get<double>();
  c.b_W_alt = j.value("b_W_alt", 0.0);
  c.k_shoot = j.value("k_shoot", 0.0);
  c.grid = j.value("grid", "");
  if (j.contains("residuals")) c.eig_residual = j["residuals"].value("eigen", 0.0);
  return c;
}

}  // namespace critwave
