#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "critwave/field.hpp"
#include "critwave/profile.hpp"

namespace critwave {

/// Radial restriction of L+ = -Delta - p W^{p-1}, discretized in strong form
/// with 4th-order differences in s.
class LplusOperator {
 public:
  explicit LplusOperator(RadialGridPtr g);

  // One-sided stencils at r_max; usable on fields that do not vanish there.
  RadialField apply(const RadialField& f) const;
  // Zero values beyond r_max; used for the eigenproblem (rho decays like e^{-kr}).
  Eigen::SparseMatrix<double> matrix() const;
  // p W^{p-1} on the grid
  const RadialField& potential() const { return V_; }
  const RadialGridPtr& grid() const { return grid_; }

 private:
  RadialGridPtr grid_;
  RadialField V_;
  std::vector<double> css_, cs_;  // coefficients of f_ss and f_s
};

LplusOperator build_Lplus(const RadialGridPtr& g);

struct GroundState {
  RadialField rho;  // unit L^2 norm, positive
  double k = 0.0;   // L+ rho = -k^2 rho
  double residual = 0.0;
  int iterations = 0;
};

// Shifted inverse iteration, then Rayleigh-quotient shifts, on the sparse matrix.
GroundState solve_ground_state(const RadialGridPtr& g);

struct ShootingResult {
  double k = 0.0;
  double r_match = 0.0;
  double r_outer = 0.0;
  int bisections = 0;
};

// Independent check: RK4 from both ends of the radial ODE, log-derivatives
// matched at r_match, bisection in k.
ShootingResult shoot_ground_state(int d, double r_match = 2.0, double r_outer = 40.0, double h = 1e-3);

struct SpectralData {
  RadialGridPtr grid;
  int d = 3;
  double k = 0.0;
  double a_W = 0.0;
  double b_W = 0.0;       // <W'|Lambda_0 rho>
  double b_W_alt = 0.0;   // k^{-2} p (p-1) <W^{p-2} W'^2 | rho>
  double k_shoot = 0.0;
  double eig_residual = 0.0;  // ||L+ rho + k^2 rho||_2
  RadialField rho, rho_r, Wprime, Lambda0_rho;
  RadialState g_plus, g_minus;
  RadialProfile rho_profile;    // even
  RadialProfile rho_r_profile;  // odd

  static SpectralData build(const RadialGridPtr& g, bool with_shooting = true);
};

// a_W and both forms of b_W from rho and k.
struct SpectralConstants {
  double a_W, b_W, b_W_alt;
};
SpectralConstants compute_constants(const RadialField& rho, double k);

// g+- = (1, +-k) rho / sqrt(2k)
std::pair<RadialState, RadialState> build_modes(const RadialField& rho, double k);
// ||J L g - lambda g||_H for J L (a, b) = (b, -L+ a)
double mode_residual(const LplusOperator& L, const RadialState& g, double lambda);

struct CoercivityReport {
  double c_low = 0.0, c_high = 0.0;
  std::vector<double> ratios;
  std::size_t worst = 0;
  double near_null_ratio = 0.0;  // f = W' - beta Lambda_0 rho
};

// [<L+ f|f> + <f|Lambda_0 rho>^2 + |<f|grad rho>|^2] / ||grad f||^2 over random
// smooth radial f with <f|rho> = 0. The grad-rho term vanishes for radial f.
CoercivityReport coercivity_probe(const SpectralData& sd, std::size_t n_samples, std::uint64_t seed);
double coercivity_ratio(const SpectralData& sd, const RadialField& f);

// JSON constants file: d, k, a_W, b_W, grid descriptor, residuals.
void write_constants(const std::string& path, const SpectralData& sd);
struct ConstantsFile {
  int d = 3;
  double k = 0, a_W = 0, b_W = 0, b_W_alt = 0, k_shoot = 0, eig_residual = 0;
  std::string grid;
};
ConstantsFile read_constants(const std::string& path);

}  // namespace critwave
