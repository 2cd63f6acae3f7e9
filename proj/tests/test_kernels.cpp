#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>
#include <omp.h>

#include "critwave/kernels.hpp"

using namespace critwave::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("parallel dot matches the serial reference") {
  for (std::size_t n : {std::size_t(100), std::size_t(1) << 15, (std::size_t(1) << 17) + 3}) {
    const auto w = random_vec(n, 1), a = random_vec(n, 2), b = random_vec(n, 3), c = random_vec(n, 4);
    CHECK(parallel::dot(w, a) == doctest::Approx(serial::dot(w, a)).epsilon(1e-12));
    CHECK(parallel::dot(w, a, b) == doctest::Approx(serial::dot(w, a, b)).epsilon(1e-12));
    CHECK(parallel::dot(w, a, b, c) == doctest::Approx(serial::dot(w, a, b, c)).epsilon(1e-12));
  }
}

TEST_CASE("parallel reductions do not depend on the thread count") {
  const std::size_t n = (std::size_t(1) << 18) + 17;
  const auto w = random_vec(n, 5), a = random_vec(n, 6);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one = parallel::dot(w, a);
  omp_set_num_threads(4);
  const double four = parallel::dot(w, a);
  omp_set_num_threads(saved);
  CHECK(one == four);
}

TEST_CASE("derivative kernels agree bitwise") {
  const std::size_t n = (std::size_t(1) << 15) + 5;
  const auto f = random_vec(n, 7);
  for (Parity p : {Parity::even, Parity::odd}) {
    std::vector<double> s1(n), p1(n), s2(n), p2(n);
    serial::diff_s(f, p, 0.01, s1);
    parallel::diff_s(f, p, 0.01, p1);
    serial::diff2_s(f, p, 0.01, s2);
    parallel::diff2_s(f, p, 0.01, p2);
    CHECK(max_abs_diff(s1, p1) == 0.0);
    CHECK(max_abs_diff(s2, p2) == 0.0);
  }
  std::vector<double> r(n), w2(n), ws(n), wp(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = (i + 0.5) * 0.02;
  for (std::size_t i = 0; i < n; ++i) w2[i] = r[i] * std::exp(-r[i] * r[i] / 4.0);
  serial::wave_accel(w2, r, 0.02, ws);
  parallel::wave_accel(w2, r, 0.02, wp);
  CHECK(max_abs_diff(ws, wp) == 0.0);

  const std::size_t m = 40;
  const auto box = random_vec(m * m * m, 8);
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<double> a(box.size()), b(box.size());
    serial::diff_axis(box, m, axis, 0.1, a);
    parallel::diff_axis(box, m, axis, 0.1, b);
    CHECK(max_abs_diff(a, b) == 0.0);
  }
}

TEST_CASE("diff_s is 4th order on smooth data") {
  // f = cos(s) is even, f' = -sin(s) is odd
  auto err = [](std::size_t n) {
    const double ds = 4.0 / n;
    std::vector<double> f(n), d1(n), d2(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = std::cos((i + 0.5) * ds);
    serial::diff_s(f, Parity::even, ds, d1);
    serial::diff2_s(f, Parity::even, ds, d2);
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = (i + 0.5) * ds;
      e1 = std::max(e1, std::abs(d1[i] + std::sin(s)));
      e2 = std::max(e2, std::abs(d2[i] + std::cos(s)));
    }
    return std::pair{e1, e2};
  };
  const auto [a1, a2] = err(200);
  const auto [b1, b2] = err(400);
  CHECK(std::log2(a1 / b1) > 3.5);
  CHECK(std::log2(a2 / b2) > 3.5);
}

TEST_CASE("wave_accel reduces to w_rr for small data") {
  const std::size_t n = 2000;
  const double h = 0.01;
  std::vector<double> r(n), w(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = (i + 0.5) * h;
    w[i] = 1e-6 * std::sin(r[i]);  // odd in r, w_rr = -w
  }
  serial::wave_accel(w, r, h, out);
  for (std::size_t i = 0; i + 2 < n; i += 97) CHECK(out[i] == doctest::Approx(-w[i]).epsilon(1e-6));
}
