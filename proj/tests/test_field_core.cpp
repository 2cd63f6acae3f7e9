#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include <doctest.h>

#include "critwave/aubin.hpp"
#include "critwave/fd.hpp"
#include "critwave/field_io.hpp"
#include "critwave/functionals.hpp"
#include "critwave/symmetry.hpp"
#include "support.hpp"

using namespace critwave;
using testsupport::rel;

namespace {

// |grad W|_2^2 in d = 3 in closed form: 4 pi sqrt(3) int t^4 (1+t^2)^-3 dt = 3 sqrt(3) pi^2 / 4
const double kGradW2 = 3.0 * std::sqrt(3.0) * std::numbers::pi * std::numbers::pi / 4.0;

// random smooth radial function: two Gaussians times a low polynomial
RadialField random_smooth(const RadialGridPtr& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.3, 2.0);
  const double a = u(rng), b = u(rng), c = u(rng), w1 = pos(rng), w2 = pos(rng), r0 = 2.0 * pos(rng);
  RadialField f(g);
  const auto r = g->r();
  for (std::size_t i = 0; i < g->n(); ++i) {
    const double x = r[i];
    f.v[i] = (a + b * x * x) * std::exp(-x * x / (w1 * w1)) + c * std::exp(-(x - r0) * (x - r0) / (w2 * w2));
  }
  return f;
}

double grad2(const RadialField& f) { return hdot1_dot(f, f); }

}  // namespace

TEST_CASE("eval_W closed form") {
  CHECK(eval_W(3, 0.0) == 1.0);
  CHECK(eval_W(3, std::sqrt(3.0)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(eval_W(5, 0.0) == 1.0);
  CHECK(eval_W(5, std::sqrt(15.0)) == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-15));
  for (double r = 0.0; r < 50.0; r += 0.37) CHECK(eval_W(3, r + 0.37) < eval_W(3, r));
  // W' = r W_r + W/2 against a centred difference
  const double r = 1.3, h = 1e-5;
  CHECK(eval_Wprime(3, r) == doctest::Approx(r * (eval_W(3, r + h) - eval_W(3, r - h)) / (2 * h) + 0.5 * eval_W(3, r)).epsilon(1e-9));
}

TEST_CASE("ground-state identities on the standard grid") {
  const auto g = RadialGrid::standard(3);
  const RadialField W = sample_W(g);
  const double gw = grad2(W);
  CHECK(rel(gw, kGradW2) < 1e-8);
  CHECK(std::abs(functional_K(W)) / gw < 1e-6);
  CHECK(rel(functional_J(W), gw / 3.0) < 1e-8);
  CHECK(rel(functional_K(scaled(W, 2.0)), -60.0 * gw) < 1e-8);
  CHECK(functional_K(scaled(W, 1.1)) < 0.0);
  CHECK(functional_K(scaled(W, 0.5)) > 0.0);
}

TEST_CASE("J - K/2* = |grad phi|^2/d for random smooth phi") {
  std::mt19937_64 rng(11);
  for (int d : {3, 5}) {
    const auto g = RadialGrid::standard(d);
    const double two_star = critical_exponent(d);
    for (int trial = 0; trial < 10; ++trial) {
      const RadialField f = random_smooth(g, rng);
      const double lhs = grad2(f) / d, rhs = functional_J(f) - functional_K(f) / two_star;
      CHECK(rel(rhs, lhs) < 1e-10);
    }
  }
}

TEST_CASE("J and K are scale invariant under S_{-1}") {
  const auto g = RadialGrid::standard(3);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const RadialField f = scaled(random_smooth(g, rng), 0.8);
    const double gf = grad2(f);
    for (double sigma : {-1.0, -0.4, 0.3, 1.0}) {
      const RadialField fs = scale_field(f, sigma, -1.0);
      CHECK(std::abs(functional_K(fs) - functional_K(f)) <= 1e-6 * gf);
      CHECK(std::abs(functional_J(fs) - functional_J(f)) <= 1e-6 * gf);
    }
  }
}

TEST_CASE("J(W) quadrature converges at least at 2nd order") {
  const double exact = kGradW2 / 3.0;
  const double e1 = std::abs(functional_J(sample_W(RadialGrid::stretched(3, 128, 200.0))) - exact);
  const double e2 = std::abs(functional_J(sample_W(RadialGrid::stretched(3, 256, 200.0))) - exact);
  const double e3 = std::abs(functional_J(sample_W(RadialGrid::stretched(3, 512, 200.0))) - exact);
  MESSAGE("J(W) errors " << e1 << " " << e2 << " " << e3);
  CHECK(std::log2(e1 / e2) >= 2.0);
  CHECK(std::log2(e2 / e3) >= 2.0);
}

TEST_CASE("energy and momentum examples") {
  const auto g = RadialGrid::standard(3);
  const RadialState W(sample_W(g), RadialField(g));
  CHECK(energy_E(W) == doctest::Approx(functional_J(W.u1)).epsilon(1e-15));
  const RadialState zero(g);
  CHECK(energy_E(zero) == 0.0);
  for (double p : momentum_P(W)) CHECK(p == 0.0);
  for (double c : center_of_energy(W)) CHECK(c == 0.0);
  for (double c : center_of_energy(zero, Cutoff{10.0})) CHECK(c == 0.0);
}

TEST_CASE("sample_W_family") {
  const auto g = RadialGrid::standard(3);
  const RadialState s0 = sample_W_family({}, g);
  const RadialField W = sample_W(g);
  for (std::size_t i = 0; i < g->n(); ++i) {
    REQUIRE(s0.u1.v[i] == W.v[i]);
    REQUIRE(s0.u2.v[i] == 0.0);
  }
  BoostParams bp;
  bp.sigma = 0.3;
  const RadialState s3 = sample_W_family(bp, g);
  CHECK(rel(grad2(s3.u1), grad2(W)) < 1e-8);

  const auto coarse = RadialGrid::uniform(3, 256, 20.0);
  bp.sigma = 3.0;  // e^-3 < spacing 0.078
  CHECK_THROWS_AS(sample_W_family(bp, coarse), std::domain_error);
  BoostParams boosted;
  boosted.p = {0.2, 0, 0};
  CHECK_THROWS(sample_W_family(boosted, g));
}

TEST_CASE("scaling operators are unitary and Lambda_0 is antisymmetric") {
  const auto& sd = testsupport::lab().spectral();
  const RadialField& rho = sd.rho;
  CHECK(std::abs(l2_dot(rho, generator_Lambda(rho, 0.0))) < 1e-8);
  const RadialField r05 = scale_field(rho, 0.5, 0.0);
  CHECK(std::abs(std::sqrt(l2_dot(r05, r05) / l2_dot(rho, rho)) - 1.0) < 1e-6);
  const RadialField id = scale_field(rho, 0.0, 0.0);
  double m = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) m = std::max(m, std::abs(id.v[i] - rho.v[i]));
  CHECK(m < 1e-12);
  const RadialField W = sample_W(rho.grid);
  CHECK(rel(grad2(scale_field(W, -0.7, -1.0)), grad2(W)) < 1e-7);
}

TEST_CASE("symplectic form") {
  const auto g = RadialGrid::standard(3);
  std::mt19937_64 rng(13);
  const RadialState a(random_smooth(g, rng), random_smooth(g, rng));
  const RadialState b(random_smooth(g, rng), random_smooth(g, rng));
  CHECK(symplectic_omega(a, a) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(symplectic_omega(a, b) == doctest::Approx(-symplectic_omega(b, a)).epsilon(1e-14));
  const RadialField& f = a.u1;
  CHECK(symplectic_omega(RadialState(f, RadialField(g)), RadialState(RadialField(g), f)) ==
        doctest::Approx(-l2_dot(f, f)).epsilon(1e-14));
}

TEST_CASE("box: translation invariance of E and P") {
  const auto g = Box3DGrid::uniform(64, 20.0);
  auto sample = [&](const Vec3& c) {
    BoxState s(g);
    for (std::size_t i = 0; i < g->size(); ++i) {
      auto x = g->point(i);
      for (int a = 0; a < 3; ++a) x[a] -= c[a];
      const double e = std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 16.0);
      s.u1.v[i] = 0.3 * e;
      s.u2.v[i] = 0.05 * (x[0] + 0.5 * x[1]) * e;
    }
    return s;
  };
  const Vec3 c{1.0, -0.5, 0.25};
  const BoxState s = sample({0, 0, 0});
  const BoxState exact = sample(c);
  const Vec3 P0 = momentum_P(s);
  const double pn = std::hypot(P0[0], P0[1], P0[2]);
  auto pdiff = [&](const BoxState& t) {
    const Vec3 P1 = momentum_P(t);
    return std::hypot(P1[0] - P0[0], P1[1] - P0[1], P1[2] - P0[2]) / pn;
  };
  // the functionals themselves
  CHECK(rel(energy_E(exact), energy_E(s)) < 1e-6);
  CHECK(pdiff(exact) < 1e-6);
  // T^c by interpolation adds its own error; it shrinks with the grid
  const BoxState t = apply_translation(s, c);
  MESSAGE("interpolated translation: dE/E = " << rel(energy_E(t), energy_E(s)) << ", dP/|P| = " << pdiff(t));
  CHECK(rel(energy_E(t), energy_E(s)) < 1e-3);
  CHECK(pdiff(t) < 1e-3);
}

TEST_CASE("box: boosted soliton momentum is collinear with p") {
  const auto g = Box3DGrid::stretched(64, 200.0, 1.0);
  BoostParams bp;
  bp.p = {0.2, 0.0, 0.0};
  const BoxState s = sample_W_family(bp, g);
  const Vec3 P = momentum_P(s);
  CHECK(std::abs(P[0]) > 0.01);
  CHECK(std::abs(P[1]) < 1e-8 * std::abs(P[0]));
  CHECK(std::abs(P[2]) < 1e-8 * std::abs(P[0]));
}

TEST_CASE("box: centre of energy of a translated soliton") {
  // W's energy tail reaches the cutoff edge; the offset error is O(|q|/R),
  // so the cutoff sits far out on a stretched box
  const auto g = Box3DGrid::stretched(96, 400.0, 2.0);
  BoostParams bp;
  bp.q = {1.0, 0.0, 0.0};
  const BoxState s = sample_W_family(bp, g);
  const Cutoff w{60.0};
  const Vec3 c = center_of_energy(s, w);
  const auto e = energy_density(s);
  double Ew = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    const auto x = g->point(i);
    Ew += g->weights()[i] * w(std::hypot(x[0], x[1], x[2])) * e.v[i];
  }
  MESSAGE("c/E = " << c[0] / Ew);
  CHECK(std::abs(c[0] / Ew - 1.0) < 0.05);
  CHECK(std::abs(c[1]) < 1e-10);
  CHECK(std::abs(c[2]) < 1e-10);
  const BoxState zero(g);
  const Vec3 cz = center_of_energy(zero, w);
  CHECK(cz[0] == 0.0);
}

TEST_CASE("field files round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "critwave_io_test";
  std::filesystem::create_directories(dir);
  const auto g = RadialGrid::stretched(3, 300, 50.0, 1.0);
  const RadialField W = sample_W(g);
  write_radial((dir / "w.txt").string(), W);
  const RadialField back = read_radial((dir / "w.txt").string());
  CHECK(back.grid->same_as(*g));
  for (std::size_t i = 0; i < g->n(); ++i) REQUIRE(back.v[i] == W.v[i]);

  const auto bg = Box3DGrid::uniform(16, 4.0);
  BoxField f(bg);
  for (std::size_t i = 0; i < bg->size(); ++i) f.v[i] = std::sin(0.1 * i);
  write_box((dir / "b.bin").string(), f);
  const BoxField fb = read_box((dir / "b.bin").string());
  CHECK(fb.grid->same_as(*bg));
  for (std::size_t i = 0; i < bg->size(); ++i) REQUIRE(fb.v[i] == f.v[i]);
  std::filesystem::remove_all(dir);
}

TEST_CASE("Fornberg weights") {
  const std::vector<double> x{-1.0, 0.0, 1.0};
  const auto w1 = fornberg_weights(0.0, x, 1);
  CHECK(w1[0] == doctest::Approx(-0.5));
  CHECK(w1[1] == doctest::Approx(0.0));
  CHECK(w1[2] == doctest::Approx(0.5));
  const auto w2 = fornberg_weights(0.0, x, 2);
  CHECK(w2[0] == doctest::Approx(1.0));
  CHECK(w2[1] == doctest::Approx(-2.0));
  const auto& st = UnitStencils::get();
  double s = 0.0;
  for (double c : st.d1_end0) s += c;
  CHECK(std::abs(s) < 1e-13);
}

TEST_CASE("grids reject bad parameters") {
  CHECK_THROWS(RadialGrid::uniform(3, 8, 10.0));
  CHECK_THROWS(RadialGrid::uniform(4, 64, 10.0));
  CHECK_THROWS(RadialGrid::uniform(3, 64, -1.0));
  CHECK_THROWS(Box3DGrid::uniform(8, 1.0));
  const auto g = RadialGrid::standard(3);
  const auto r = g->r();
  CHECK(r[0] > 0.0);
  for (std::size_t i = 1; i < g->n(); ++i) REQUIRE(r[i] > r[i - 1]);
}
