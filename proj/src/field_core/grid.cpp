#include "critwave/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "critwave/fd.hpp"

namespace critwave {

std::string to_string(GridMap m) { return m == GridMap::uniform ? "uniform" : "sinh"; }

GridMap grid_map_from_string(const std::string& s) {
  if (s == "uniform") return GridMap::uniform;
  if (s == "sinh" || s == "stretched") return GridMap::sinh;
  throw std::invalid_argument("unknown grid map '" + s + "'");
}

namespace {

double unit_sphere_area(int d) {
  // |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

// Endpoint correction for the midpoint rule at the right end, expressed as
// weights on the last six samples of the integrand (unit spacing).
std::array<double, 6> midpoint_end_correction() {
  std::array<double, 6> nodes{};
  for (int j = 0; j < 6; ++j) nodes[j] = -5.0 + j;
  const auto d1 = fornberg_weights(0.5, nodes, 1);
  const auto d3 = fornberg_weights(0.5, nodes, 3);
  std::array<double, 6> c{};
  for (int j = 0; j < 6; ++j) c[j] = d1[j] / 24.0 - 7.0 * d3[j] / 5760.0;
  return c;
}

}  // namespace

RadialGridPtr RadialGrid::make(int d, std::size_t n, double r_max, GridMap map, double core) {
  if (d != 3 && d != 5) throw std::invalid_argument("RadialGrid: d must be 3 or 5");
  if (n < 16) throw std::invalid_argument("RadialGrid: n must be at least 16");
  if (!(r_max > 0.0)) throw std::invalid_argument("RadialGrid: r_max must be positive");
  if (map == GridMap::sinh && !(core > 0.0)) throw std::invalid_argument("RadialGrid: core must be positive");

  std::shared_ptr<RadialGrid> g(new RadialGrid());
  g->d_ = d;
  g->r_max_ = r_max;
  g->map_ = map;
  g->core_ = map == GridMap::uniform ? 1.0 : core;
  g->area_ = unit_sphere_area(d);
  const double s_max = map == GridMap::uniform ? r_max : std::asinh(r_max / core);
  g->ds_ = s_max / static_cast<double>(n);
  g->r_.resize(n);
  g->jac_.resize(n);
  g->jac2_.resize(n);
  g->w_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = (static_cast<double>(i) + 0.5) * g->ds_;
    if (map == GridMap::uniform) {
      g->r_[i] = s;
      g->jac_[i] = 1.0;
      g->jac2_[i] = 0.0;
    } else {
      g->r_[i] = core * std::sinh(s);
      g->jac_[i] = core * std::cosh(s);
      g->jac2_[i] = core * std::sinh(s);
    }
    g->w_[i] = g->area_ * std::pow(g->r_[i], d - 1) * g->jac_[i] * g->ds_;
  }
  // The integrand r^{d-1} r'(s) f(r(s)) is even in s for even f, so the
  // origin end needs no correction; only the outer end does.
  const auto corr = midpoint_end_correction();
  for (int j = 0; j < 6; ++j) {
    const std::size_t i = n - 6 + j;
    g->w_[i] += g->area_ * std::pow(g->r_[i], d - 1) * g->jac_[i] * g->ds_ * corr[j];
  }
  std::array<double, 6> nodes{};
  for (int j = 0; j < 6; ++j) nodes[j] = -5.0 + j;
  const auto e = fornberg_weights(0.5, nodes, 0);
  for (int j = 0; j < 6; ++j) g->edge_[j] = e[j];
  return g;
}

RadialGridPtr RadialGrid::uniform(int d, std::size_t n, double r_max) {
  return make(d, n, r_max, GridMap::uniform, 1.0);
}

RadialGridPtr RadialGrid::stretched(int d, std::size_t n, double r_max, double core) {
  return make(d, n, r_max, GridMap::sinh, core);
}

RadialGridPtr RadialGrid::standard(int d) { return stretched(d, 4096, 200.0, 1.0); }

double RadialGrid::r_of_s(double s) const { return map_ == GridMap::uniform ? s : core_ * std::sinh(s); }

double RadialGrid::s_of_r(double r) const { return map_ == GridMap::uniform ? r : std::asinh(r / core_); }

double RadialGrid::drds(double s) const { return map_ == GridMap::uniform ? 1.0 : core_ * std::cosh(s); }

double RadialGrid::edge_value(std::span<const double> f) const {
  const std::size_t n = f.size();
  double v = 0.0;
  for (int j = 0; j < 6; ++j) v += edge_[j] * f[n - 6 + j];
  return v;
}

bool RadialGrid::same_as(const RadialGrid& o) const {
  return this == &o || (d_ == o.d_ && n() == o.n() && r_max_ == o.r_max_ && map_ == o.map_ && core_ == o.core_);
}

std::string RadialGrid::describe() const {
  std::ostringstream os;
  os << "radial d=" << d_ << " n=" << n() << " r_max=" << r_max_ << " map=" << to_string(map_);
  if (map_ == GridMap::sinh) os << " core=" << core_;
  return os.str();
}

BoxGridPtr Box3DGrid::make(std::size_t m, double L, GridMap map, double core) {
  if (m < 16) throw std::invalid_argument("Box3DGrid: m must be at least 16");
  if (!(L > 0.0)) throw std::invalid_argument("Box3DGrid: L must be positive");
  std::shared_ptr<Box3DGrid> g(new Box3DGrid());
  g->L_ = L;
  g->map_ = map;
  g->core_ = map == GridMap::uniform ? 1.0 : core;
  const double xi_max = map == GridMap::uniform ? L : std::asinh(L / core);
  g->h_ = 2.0 * xi_max / static_cast<double>(m);
  g->x_.resize(m);
  g->jac_.resize(m);
  g->w1_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double xi = -xi_max + (static_cast<double>(j) + 0.5) * g->h_;
    if (map == GridMap::uniform) {
      g->x_[j] = xi;
      g->jac_[j] = 1.0;
    } else {
      g->x_[j] = core * std::sinh(xi);
      g->jac_[j] = core * std::cosh(xi);
    }
    g->w1_[j] = g->jac_[j] * g->h_;
  }
  g->w3_.resize(m * m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) g->w3_[(i * m + j) * m + k] = g->w1_[i] * g->w1_[j] * g->w1_[k];
  return g;
}

BoxGridPtr Box3DGrid::uniform(std::size_t m, double L) { return make(m, L, GridMap::uniform, 1.0); }
BoxGridPtr Box3DGrid::stretched(std::size_t m, double L, double core) { return make(m, L, GridMap::sinh, core); }
BoxGridPtr Box3DGrid::standard() { return uniform(64, 20.0); }
BoxGridPtr Box3DGrid::far_field() { return stretched(128, 1.0e5, 1.0); }

std::array<double, 3> Box3DGrid::point(std::size_t idx) const {
  const std::size_t mm = m();
  return {x_[idx / (mm * mm)], x_[(idx / mm) % mm], x_[idx % mm]};
}

double Box3DGrid::min_spacing() const {
  double best = x_[1] - x_[0];
  for (std::size_t j = 1; j < x_.size(); ++j) best = std::min(best, x_[j] - x_[j - 1]);
  return best;
}

bool Box3DGrid::same_as(const Box3DGrid& o) const {
  return this == &o || (m() == o.m() && L_ == o.L_ && map_ == o.map_ && core_ == o.core_);
}

std::string Box3DGrid::describe() const {
  std::ostringstream os;
  os << "box m=" << m() << " L=" << L_ << " map=" << to_string(map_);
  if (map_ == GridMap::sinh) os << " core=" << core_;
  return os.str();
}

}  // namespace critwave
