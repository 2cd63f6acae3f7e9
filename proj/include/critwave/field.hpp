#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "critwave/grid.hpp"

namespace critwave {

struct RadialField {
  RadialGridPtr grid;
  std::vector<double> v;

  RadialField() = default;
  explicit RadialField(RadialGridPtr g) : grid(std::move(g)), v(grid->n(), 0.0) {}
  RadialField(RadialGridPtr g, std::vector<double> values) : grid(std::move(g)), v(std::move(values)) {
    if (v.size() != grid->n()) throw std::invalid_argument("RadialField: length does not match grid");
  }
  std::size_t size() const { return v.size(); }
  double operator[](std::size_t i) const { return v[i]; }
  double& operator[](std::size_t i) { return v[i]; }
};

struct BoxField {
  BoxGridPtr grid;
  std::vector<double> v;

  BoxField() = default;
  explicit BoxField(BoxGridPtr g) : grid(std::move(g)), v(grid->size(), 0.0) {}
  BoxField(BoxGridPtr g, std::vector<double> values) : grid(std::move(g)), v(std::move(values)) {
    if (v.size() != grid->size()) throw std::invalid_argument("BoxField: length does not match grid");
  }
  std::size_t size() const { return v.size(); }
  double operator[](std::size_t i) const { return v[i]; }
  double& operator[](std::size_t i) { return v[i]; }
};

// (u, u_t) in H = Hdot^1 x L^2.
struct RadialState {
  RadialField u1, u2;
  RadialState() = default;
  explicit RadialState(const RadialGridPtr& g) : u1(g), u2(g) {}
  RadialState(RadialField a, RadialField b) : u1(std::move(a)), u2(std::move(b)) {}
  const RadialGridPtr& grid() const { return u1.grid; }
};

struct BoxState {
  BoxField u1, u2;
  BoxState() = default;
  explicit BoxState(const BoxGridPtr& g) : u1(g), u2(g) {}
  BoxState(BoxField a, BoxField b) : u1(std::move(a)), u2(std::move(b)) {}
  const BoxGridPtr& grid() const { return u1.grid; }
};

using Vec3 = std::array<double, 3>;

// Scale sigma, boost p and centre q of the soliton family.
struct BoostParams {
  double sigma = 0.0;
  Vec3 p{0.0, 0.0, 0.0};
  Vec3 q{0.0, 0.0, 0.0};
};

// a + c b, fieldwise.
RadialField axpy(const RadialField& a, double c, const RadialField& b);
BoxField axpy(const BoxField& a, double c, const BoxField& b);
RadialState axpy(const RadialState& a, double c, const RadialState& b);
BoxState axpy(const BoxState& a, double c, const BoxState& b);
RadialField scaled(const RadialField& a, double c);
BoxField scaled(const BoxField& a, double c);
RadialState scaled(const RadialState& a, double c);
BoxState scaled(const BoxState& a, double c);
bool all_finite(const RadialState& s);
bool all_finite(const BoxState& s);

}  // namespace critwave
