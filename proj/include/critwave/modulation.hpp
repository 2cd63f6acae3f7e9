#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "critwave/field.hpp"
#include "critwave/spectral.hpp"

namespace critwave {

/// Neighbourhood thresholds, ordered eps_* < delta_* < delta_S < delta_H <
/// delta_E < delta_A, plus the constant C in d0 = C dist.
struct Thresholds {
  double delta_A = 0.4;
  double delta_E = 0.2;
  double delta_H = 0.1;
  double delta_S = 0.05;
  double delta_star = 0.025;
  double eps_star = 0.0125;
  double C_d0 = 1.0;

  // Each threshold half the one above it.
  static Thresholds chain(double delta_A, double C_d0);
  bool ordered() const;
};

struct ModulationFit {
  int sign = 1;  // the s in u = T^c S^sigma (s W + v)
  double sigma = 0.0;
  Vec3 c{0.0, 0.0, 0.0};
  bool converged = false;
  bool ambiguous = false;
  int newton_iters = 0;
  double orth_residual = 0.0;  // max |<v1|Lambda_0 rho>|, |<v1|grad rho>| in the frame
  double v_norm = 0.0;         // ||v||_H
  double lambda1 = 0.0, lambda2 = 0.0;
  std::string message;
};

// The residual v is stored in the lab frame, v_lab = u - s T^c S^sigma W;
// it is the frame residual pushed through the (H-unitary) symmetry.
struct RadialFit : ModulationFit {
  RadialState v;
};
struct BoxFit : ModulationFit {
  BoxState v;
};

struct ModeSplit {
  double lambda_plus = 0.0, lambda_minus = 0.0, lambda1 = 0.0, lambda2 = 0.0;
  Vec3 mu{0.0, 0.0, 0.0};
  double alpha = 0.0;
  RadialState gamma;        // lab frame
  double gamma_L = 0.0;     // <L gamma | gamma>
  double gamma_norm2 = 0.0; // ||gamma||_H^2
};

enum class Regime { inner, blend, outer };
std::string to_string(Regime r);

struct DistanceReport {
  double d0 = 0.0;   // C times the H-distance to +-S_0
  double d1 = 0.0;   // sqrt(E - J(W) + k^2 lambda1^2) when a fit exists
  double dW = 0.0;
  double dist = 0.0; // plain H-distance
  int nearest_sign = 1;
  double nearest_sigma = 0.0;
  Vec3 nearest_c{0.0, 0.0, 0.0};
  bool have_fit = false;
  Regime regime = Regime::outer;
  ModulationFit fit;
  std::shared_ptr<const RadialFit> radial_fit;  // with the residual, radial states only
};

struct SignResult {
  int value = 0;  // +-1, or 0 where undefined
  bool defined = false;
  bool inner_rule = false, outer_rule = false;
  bool consistent = true;
  int inner_value = 0, outer_value = 0;
};

struct RegionFlags {
  bool in_H_star = false;
  bool in_H_X = false;
  bool in_variational_zone = false;
};

struct FitOptions {
  int max_iters = 30;
  double tol_orth = 1e-8;
  std::optional<double> sigma_seed;
  std::optional<Vec3> c_seed;
  std::optional<int> sign;
};

class Modulator {
 public:
  Modulator(std::shared_ptr<const SpectralData> sd, Thresholds th);

  const SpectralData& spectral() const { return *sd_; }
  const Thresholds& thresholds() const { return th_; }
  void set_thresholds(const Thresholds& th) { th_ = th; }

  RadialFit fit(const RadialState& s, const FitOptions& opt = {}) const;
  BoxFit fit(const BoxState& s, const FitOptions& opt = {}) const;

  // Lab-frame test functions of the orthogonality conditions at (sigma, c):
  // T^c S_1^sigma Lambda_0 rho, then T^c S_1^sigma d_j rho.
  std::vector<RadialField> orthogonality_directions(const RadialGridPtr& g, double sigma) const;
  std::vector<BoxField> orthogonality_directions(const BoxGridPtr& g, double sigma, const Vec3& c) const;

  ModeSplit split_modes(const RadialFit& f) const;
  static double linearized_norm(const ModeSplit& ms, double k);
  // C(v) for v1 relative to s W_sigma on v1's grid.
  double superquadratic_C(const RadialField& v1, double sigma = 0.0, int sign = 1) const;

  DistanceReport distance(const RadialState& s, std::optional<double> sigma_seed = {}) const;
  DistanceReport distance(const BoxState& s) const;

  // Nearest point of +-S_0 (radial: sigma only).
  struct Nearest {
    int sign = 1;
    double sigma = 0.0;
    Vec3 c{0.0, 0.0, 0.0};
    double dist = 0.0;
    double dist_other = 0.0;  // best distance with the other sign
  };
  Nearest nearest_soliton(const RadialState& s, std::optional<double> sigma_seed = {}) const;
  Nearest nearest_soliton(const BoxState& s, std::optional<Vec3> c_seed = {},
                          std::optional<double> sigma_seed = {}) const;

  SignResult sign_functional(const RadialState& s) const;
  SignResult sign_functional(const RadialState& s, const DistanceReport& rep) const;
  RegionFlags region_predicates(const RadialState& s) const;
  RegionFlags region_predicates(const RadialState& s, const DistanceReport& rep) const;
  RegionFlags region_predicates(const BoxState& s) const;

  // J(W) evaluated with the quadrature of grid g.
  static double J_W_on(const RadialGridPtr& g);
  static double J_W_on(const BoxGridPtr& g);

 private:
  double blend(double d0, double d1, Regime* regime) const;

  std::shared_ptr<const SpectralData> sd_;
  Thresholds th_;
};

// Empirical thresholds: delta_A is half the capture radius of the fit
// (in d0 units), C_d0 makes d0 = d1 at d1 = delta_E/2 on W + eps rho.
struct Calibration {
  double capture_radius = 0.0;  // H-distance of the nearest probe the fit failed on
  double C_d0 = 1.0;
  double probe_eps = 0.0;
  Thresholds thresholds;
  int iterations = 0;
  int probes = 0;
};
Calibration calibrate_thresholds(const std::shared_ptr<const SpectralData>& sd, int n_dirs = 30,
                                 std::uint64_t seed = 3);

}  // namespace critwave
