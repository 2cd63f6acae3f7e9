#include <cmath>
#include <filesystem>

#include <doctest.h>

#include "critwave/aubin.hpp"
#include "critwave/functionals.hpp"
#include "critwave/spectral.hpp"
#include "critwave/symmetry.hpp"
#include "support.hpp"

using namespace critwave;
using testsupport::rel;

namespace {

const SpectralData& sd() {
  static const SpectralData s = SpectralData::build(RadialGrid::standard(3));
  return s;
}

double l2norm(const RadialField& f) { return std::sqrt(l2_dot(f, f)); }

}  // namespace

TEST_CASE("ground state of L+") {
  const auto& s = sd();
  CHECK(s.k > 0.0);
  CHECK(std::abs(l2norm(s.rho) - 1.0) < 1e-8);
  CHECK(s.eig_residual <= 1e-6);
  double rmin = 1e300;
  for (double v : s.rho.v) rmin = std::min(rmin, v);
  CHECK(rmin > 0.0);
  const LplusOperator L = build_Lplus(s.grid);
  const RadialField res = axpy(L.apply(s.rho), s.k * s.k, s.rho);
  CHECK(l2norm(res) <= 1e-6);
  CHECK(rel(s.k, testsupport::lab().spectral().k) < 1e-12);
}

TEST_CASE("eigensolver and shooting agree") {
  CHECK(rel(sd().k_shoot, sd().k) < 1e-4);
  const ShootingResult sh = shoot_ground_state(3, 1.5, 30.0, 2e-3);
  CHECK(rel(sh.k, sd().k) < 1e-4);
}

TEST_CASE("k is converged in the grid") {
  const GroundState fine = solve_ground_state(RadialGrid::stretched(3, 8192, 200.0, 1.0));
  MESSAGE("k(4096) = " << sd().k << ", k(8192) = " << fine.k);
  CHECK(rel(fine.k, sd().k) < 1e-4);
}

TEST_CASE("orthogonality relations") {
  const auto& s = sd();
  CHECK(std::abs(l2_dot(s.rho, generator_Lambda(s.rho, 0.0))) < 1e-8);
  CHECK(std::abs(l2_dot(s.Wprime, s.rho)) < 1e-6);
}

TEST_CASE("L+ examples") {
  const auto& s = sd();
  const LplusOperator L = build_Lplus(s.grid);
  const RadialField LW = L.apply(s.Wprime);
  CHECK(l2norm(LW) / std::sqrt(hdot1_dot(s.Wprime, s.Wprime)) <= 1e-4);

  // a bump at r = 120: the potential is ~ 5 W^4 ~ 4e-8 there
  RadialField b(s.grid);
  const auto r = s.grid->r();
  for (std::size_t i = 0; i < b.size(); ++i) b.v[i] = std::exp(-(r[i] - 120.0) * (r[i] - 120.0) / 16.0);
  const RadialField Lb = L.apply(b);
  // -Delta b = -(b_rr + 2 b_r / r)
  RadialField lap(s.grid);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double x = (r[i] - 120.0) / 4.0;
    const double br = -2.0 * x / 4.0 * b.v[i];
    const double brr = (4.0 * x * x - 2.0) / 16.0 * b.v[i];
    lap.v[i] = -(brr + 2.0 * br / r[i]);
  }
  CHECK(l2norm(axpy(Lb, -1.0, lap)) / l2norm(lap) < 1e-4);
}

TEST_CASE("spectral constants") {
  const auto& s = sd();
  CHECK(s.a_W > 0.0);
  CHECK(s.b_W > 0.0);
  CHECK(rel(s.b_W_alt, s.b_W) < 1e-3);
  const SpectralConstants c = compute_constants(s.rho, s.k);
  CHECK(c.a_W == s.a_W);
  // <d_j W | d_k rho> = delta_jk (1/d) <grad W | grad rho> = delta_jk (1/d) <-Delta W | rho> = delta_jk a_W
  const RadialField W = sample_W(s.grid);
  CHECK(std::abs(hdot1_dot(W, s.rho) / 3.0 - s.a_W) < 1e-4);
}

TEST_CASE("unstable and stable modes") {
  const auto& s = sd();
  CHECK(std::abs(symplectic_omega(s.g_plus, s.g_minus) - 1.0) < 1e-8);
  CHECK(std::abs(symplectic_omega(s.g_plus, s.g_plus)) < 1e-14);
  const LplusOperator L = build_Lplus(s.grid);
  CHECK(mode_residual(L, s.g_plus, s.k) <= 1e-5);
  CHECK(mode_residual(L, s.g_minus, -s.k) <= 1e-5);
}

TEST_CASE("coercivity sampling") {
  const CoercivityReport rep = coercivity_probe(sd(), 100, 5);
  MESSAGE("ratio in [" << rep.c_low << ", " << rep.c_high << "], near-null " << rep.near_null_ratio);
  CHECK(rep.ratios.size() == 100);
  CHECK(rep.c_low > 0.0);
  CHECK(rep.c_high >= rep.c_low);
  CHECK(rep.near_null_ratio > 0.0);
  // a rho-orthogonalized Gaussian
  RadialField f(sd().grid);
  const auto r = sd().grid->r();
  for (std::size_t i = 0; i < f.size(); ++i) f.v[i] = std::exp(-r[i] * r[i]);
  f = axpy(f, -l2_dot(f, sd().rho), sd().rho);
  const double q = coercivity_ratio(sd(), f);
  CHECK(q > 0.0);
  CHECK(q < 10.0);
}

TEST_CASE("constants file round trip") {
  const auto p = std::filesystem::temp_directory_path() / "critwave_constants_test.json";
  write_constants(p.string(), sd());
  const ConstantsFile c = read_constants(p.string());
  CHECK(c.d == 3);
  CHECK(c.k == sd().k);
  CHECK(c.a_W == sd().a_W);
  CHECK(c.b_W == sd().b_W);
  CHECK(c.grid == sd().grid->describe());
  std::filesystem::remove(p);
  CHECK_THROWS(read_constants(p.string()));
}

TEST_CASE("d = 5 statics") {
  const SpectralData s5 = SpectralData::build(RadialGrid::standard(5), false);
  CHECK(s5.k > 0.0);
  CHECK(s5.eig_residual <= 1e-6);
  CHECK(s5.a_W > 0.0);
  CHECK(s5.b_W > 0.0);
  CHECK(rel(s5.b_W_alt, s5.b_W) < 1e-3);
  const ShootingResult sh = shoot_ground_state(5);
  CHECK(rel(sh.k, s5.k) < 1e-4);
}
