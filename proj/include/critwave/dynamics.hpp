#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "critwave/field.hpp"
#include "critwave/modulation.hpp"

namespace critwave {

enum class Verdict { Blowup, Scatter, Undetermined };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct EvolutionConfig {
  double h = 0.02;        // uniform radial spacing
  double r_max = 200.0;
  double cfl = 0.25;      // dt = cfl h
  double t_max = 60.0;
  double monitor_dt = 0.1;
  double blowup_norm_threshold = 40.0;  // on ||u||_H
  double scatter_window = 10.0;
  double scatter_ratio = 2e-3;          // int |u|^6 / ||u||_H^2
  double cone_offset = 5.0;             // cutoff and exterior radius t + offset
  bool confirm_blowup = true;
  bool stop_on_verdict = true;
  bool parallel = true;

  double dt() const { return cfl * h; }
  std::size_t n() const;
  RadialGridPtr grid() const;
  // throws std::invalid_argument on a bad field
  void validate() const;
};

// One time direction. All series have one entry per monitor.
struct TrajectoryRecord {
  int direction = 1;  // +1 forward, -1 backward (evolution of (u1, -u2))
  std::vector<double> t, tau, E, K, dW, lambda1, sigma, Eext, Vw, equip;
  std::vector<double> lambda2, gamma_norm, norm, pot_ratio;
  std::vector<int> fit_ok, sign_S;  // sign_S: 0 where the sign functional is undefined
  Verdict verdict = Verdict::Undetermined;
  double verdict_time = 0.0;
  bool blowup_confirmed = false;
  std::string note;
  std::size_t steps = 0;

  std::size_t size() const { return t.size(); }
};

struct EvolutionResult {
  TrajectoryRecord forward, backward;
  Verdict verdict_forward() const { return forward.verdict; }
  Verdict verdict_backward() const { return backward.verdict; }
};

/// Method-of-lines integrator for w = r u in d = 3 on a uniform cell-centred
/// grid: 4th-order Laplacian, odd reflection at the origin, Sommerfeld
/// w_t + w_r = 0 at the last node, velocity Verlet in time.
class RadialWave {
 public:
  struct Phase {
    std::vector<double> w, v, a;  // r u, r u_t, acceleration at w
    double t = 0.0;
    double max_u = 0.0;
  };

  explicit RadialWave(RadialGridPtr g, bool parallel = true);

  Phase to_phase(const RadialState& s, double t = 0.0) const;
  RadialState to_state(const Phase& p) const;
  void step(Phase& p, double dt) const;
  RadialState step(const RadialState& s, double dt) const;
  // dt capped so that dt^2 max|5 u^4| stays below 0.09
  double guarded_dt(const Phase& p, double dt0) const;

  const RadialGridPtr& grid() const { return g_; }

 private:
  void accel(Phase& p) const;
  RadialGridPtr g_;
  bool parallel_;
};

struct EvolutionContext {
  const Modulator* modulator = nullptr;
  EvolutionConfig cfg;
};

TrajectoryRecord evolve_direction(const RadialState& s0, int direction, const EvolutionContext& ctx);
EvolutionResult evolve_with_monitors(const RadialState& s0, const EvolutionContext& ctx);

// Detectors
bool blowup_triggered(double norm, const EvolutionConfig& cfg);
/// Re-runs from a checkpoint at half the spacing and half the step; true if the
/// norm again passes the threshold (or the solution overflows) before t_end.
bool confirm_blowup(const RadialState& checkpoint, double t_c, double t_end, const EvolutionConfig& cfg);
bool detect_scattering(const TrajectoryRecord& rec, const EvolutionConfig& cfg, const Thresholds& th);

// Analysis
struct EjectionFit {
  bool ok = false;
  std::string message;
  double rate = 0.0;
  double rate_over_k = 0.0;
  std::size_t points = 0;
  double tau0 = 0.0, tau1 = 0.0;
  bool dW_monotone = false;
  double sigma_ratio = 0.0;  // max |sigma - sigma(t0)| / dW on the window
  int lambda1_sign = 0;
};
/// Least-squares slope of log|lambda1| against tau on the samples with
/// lo <= dW <= hi and a converged fit. Defaults: lo = 8 dW(0), hi = delta_H.
EjectionFit fit_ejection_rate(const TrajectoryRecord& rec, double k, double lo, double hi);
EjectionFit fit_ejection_rate(const TrajectoryRecord& rec, double k, const Thresholds& th);

struct OdeResidual {
  std::size_t points = 0;
  double max_rel = 0.0;          // max |d_tau lambda1 - lambda2 - sigma_tau lambda1| / |lambda2|
  double sigma_tau_over_gamma = 0.0;
};
OdeResidual modulation_ode_residual(const TrajectoryRecord& rec, double lo, double hi);

struct LinearCheck {
  std::size_t points = 0;
  double max_rel = 0.0;
};
/// Compares lambda1(tau) with the linearized solution started from
/// (lambda1, lambda2)(0) = eps (a1, a2) while |lambda1| <= cap.
LinearCheck linearized_check(const TrajectoryRecord& rec, double k, double a1, double a2, double eps, double cap);

// Number of sign flips among the defined sign-functional samples.
int sign_flips(const TrajectoryRecord& rec);
/// True when dW exits above delta_* and later re-enters below it while the
/// sign functional flips at least twice.
bool one_pass_violation(const TrajectoryRecord& rec, double delta_star);

// Output: CSV with columns t,tau,E,K,dW,lambda1,sigma,Eext,Vw,equip and a
// JSON sidecar with the verdict.
void write_record_csv(const TrajectoryRecord& rec, const std::string& path);
TrajectoryRecord read_record_csv(const std::string& path);
void write_verdict_json(const EvolutionResult& res, const std::string& path, const std::string& extra_json = "{}");

}  // namespace critwave
