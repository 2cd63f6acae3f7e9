#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace critwave {

enum class GridMap { uniform, sinh };

std::string to_string(GridMap m);
GridMap grid_map_from_string(const std::string& s);

/// Radial grid r_i = r(s_i) on the cell-centred computational grid
/// s_i = (i + 1/2) ds, i = 0..n-1, with r(s) = s or r(s) = a sinh(s).
/// The outer radius r_max = r(n ds) sits half a cell beyond the last node.
/// Quadrature weights include the sphere area, so sum_i w_i f_i ~ int f dx.
class RadialGrid {
 public:
  static std::shared_ptr<const RadialGrid> uniform(int d, std::size_t n, double r_max);
  static std::shared_ptr<const RadialGrid> stretched(int d, std::size_t n, double r_max, double core = 1.0);
  // n = 4096 on (0, 200], sinh map with core 1.
  static std::shared_ptr<const RadialGrid> standard(int d);
  static std::shared_ptr<const RadialGrid> make(int d, std::size_t n, double r_max, GridMap map, double core);

  int d() const { return d_; }
  std::size_t n() const { return r_.size(); }
  double r_max() const { return r_max_; }
  double ds() const { return ds_; }
  GridMap map() const { return map_; }
  double core() const { return core_; }
  double sphere_area() const { return area_; }

  std::span<const double> r() const { return r_; }
  std::span<const double> jac() const { return jac_; }    // dr/ds
  std::span<const double> jac2() const { return jac2_; }  // d2r/ds2
  std::span<const double> weights() const { return w_; }
  // Weights on the last six nodes extrapolating a value to r_max.
  const std::array<double, 6>& edge_weights() const { return edge_; }

  double r_of_s(double s) const;
  double s_of_r(double r) const;
  double drds(double s) const;
  double min_spacing() const { return jac_[0] * ds_; }
  double max_spacing() const { return jac_.back() * ds_; }

  double edge_value(std::span<const double> f) const;

  bool same_as(const RadialGrid& o) const;
  std::string describe() const;

 private:
  RadialGrid() = default;

  int d_ = 3;
  double r_max_ = 0.0;
  GridMap map_ = GridMap::uniform;
  double core_ = 1.0;
  double ds_ = 0.0;
  double area_ = 0.0;
  std::vector<double> r_, jac_, jac2_, w_;
  std::array<double, 6> edge_{};
};

using RadialGridPtr = std::shared_ptr<const RadialGrid>;

/// m^3 box over [-L, L]^3, each axis mapped x = xi or x = a sinh(xi) from
/// cell-centred xi_j. Storage is row-major with axis 0 slowest. 3-D only.
class Box3DGrid {
 public:
  static std::shared_ptr<const Box3DGrid> uniform(std::size_t m, double L);
  static std::shared_ptr<const Box3DGrid> stretched(std::size_t m, double L, double core = 1.0);
  // m = 64, L = 20, uniform.
  static std::shared_ptr<const Box3DGrid> standard();
  // m = 128, L = 1e5, sinh core 1: resolves the slow tail of W.
  static std::shared_ptr<const Box3DGrid> far_field();
  static std::shared_ptr<const Box3DGrid> make(std::size_t m, double L, GridMap map, double core);

  std::size_t m() const { return x_.size(); }
  std::size_t size() const { return m() * m() * m(); }
  double L() const { return L_; }
  double h() const { return h_; }
  GridMap map() const { return map_; }
  double core() const { return core_; }

  std::span<const double> x() const { return x_; }      // 1-D node coordinates
  std::span<const double> jac() const { return jac_; }  // dx/dxi per node
  std::span<const double> w1() const { return w1_; }    // 1-D weights
  double weight(std::size_t i, std::size_t j, std::size_t k) const { return w1_[i] * w1_[j] * w1_[k]; }
  std::span<const double> weights() const { return w3_; }

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (i * m() + j) * m() + k; }
  std::array<double, 3> point(std::size_t idx) const;
  double min_spacing() const;

  bool same_as(const Box3DGrid& o) const;
  std::string describe() const;

 private:
  Box3DGrid() = default;

  double L_ = 0.0;
  double h_ = 0.0;
  GridMap map_ = GridMap::uniform;
  double core_ = 1.0;
  std::vector<double> x_, jac_, w1_, w3_;
};

using BoxGridPtr = std::shared_ptr<const Box3DGrid>;

}  // namespace critwave
