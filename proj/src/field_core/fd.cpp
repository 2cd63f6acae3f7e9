#include "critwave/fd.hpp"

#include <stdexcept>

namespace critwave {

std::vector<double> fornberg_weights(double z, std::span<const double> x, int order) {
  const int n = static_cast<int>(x.size());
  if (n == 0 || order < 0 || order >= n) {
    throw std::invalid_argument("fornberg_weights: need more nodes than the derivative order");
  }
  // c[j][k]: weight of node j for derivative k.
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][order];
  return w;
}

namespace {

template <std::size_t N>
std::array<double, N> unit_weights(double z, int order) {
  std::array<double, N> nodes{};
  for (std::size_t j = 0; j < N; ++j) nodes[j] = -static_cast<double>(N - 1) + static_cast<double>(j);
  const auto w = fornberg_weights(z, nodes, order);
  std::array<double, N> out{};
  for (std::size_t j = 0; j < N; ++j) out[j] = w[j];
  return out;
}

}  // namespace

const UnitStencils& UnitStencils::get() {
  static const UnitStencils s = [] {
    UnitStencils t{};
    t.d1_end0 = unit_weights<5>(0.0, 1);
    t.d1_end1 = unit_weights<5>(-1.0, 1);
    t.d2_end0 = unit_weights<6>(0.0, 2);
    t.d2_end1 = unit_weights<6>(-1.0, 2);
    return t;
  }();
  return s;
}

}  // namespace critwave
