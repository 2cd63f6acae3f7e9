#pragma once

#include <array>
#include <span>
#include <vector>

namespace critwave {

/// Finite-difference weights for the derivative of order `order` at `z`,
/// using the nodes `x` (Fornberg's recursion). The result has one weight
/// per node.
std::vector<double> fornberg_weights(double z, std::span<const double> x, int order);

/// Fixed 4th-order stencils on a unit-spaced grid. Boundary stencils are
/// listed for the last node (`end0`) and the one before it (`end1`), with
/// node offsets ending at the right edge; left-edge stencils are the mirror
/// images (negated for odd derivative order).
struct UnitStencils {
  // d/dx at node n-1 from nodes n-5..n-1 and at node n-2 from n-5..n-1.
  std::array<double, 5> d1_end0;
  std::array<double, 5> d1_end1;
  // d2/dx2 at node n-1 from nodes n-6..n-1 and at node n-2 from n-6..n-1.
  std::array<double, 6> d2_end0;
  std::array<double, 6> d2_end1;

  static const UnitStencils& get();
};

}  // namespace critwave
