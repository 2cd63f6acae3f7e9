// Acceptance run: one PASS/FAIL line per criterion, artifacts under
// ./acceptance_out. Exit status 1 if any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "critwave/aubin.hpp"
#include "critwave/functionals.hpp"
#include "support.hpp"

using namespace critwave;
namespace fs = std::filesystem;
using clk = std::chrono::steady_clock;

namespace {

struct Line {
  int id;
  std::string title;
  bool pass = true;
  std::string detail;
  double seconds = 0.0;
  double limit = 0.0;
};

std::string fmt(const char* f, double x) {
  char b[64];
  std::snprintf(b, sizeof b, f, x);
  return b;
}

double since(clk::time_point t0) { return std::chrono::duration<double>(clk::now() - t0).count(); }

void print(const Line& l) {
  const bool ok = l.pass && l.seconds <= l.limit;
  std::printf("[%s] %d %s | %s | %.1f s (limit %.0f s)\n", ok ? "PASS" : "FAIL", l.id, l.title.c_str(), l.detail.c_str(),
              l.seconds, l.limit);
  std::fflush(stdout);
}

// Static checks grouped into one line.
Line from_static(int id, const std::string& title, const StaticReport& rep, const std::vector<std::string>& names,
                 double limit) {
  Line l{id, title};
  l.limit = limit;
  for (const auto& n : names) {
    bool found = false;
    for (const auto& c : rep.checks) {
      if (c.name != n) continue;
      found = true;
      l.pass = l.pass && c.pass;
      l.seconds += c.seconds;
      if (!l.detail.empty()) l.detail += "; ";
      l.detail += c.name + "=" + fmt("%.3g", c.value);
      if (!c.detail.empty()) l.detail += " (" + c.detail + ")";
    }
    if (!found) {
      l.pass = false;
      l.detail += "; missing " + n;
    }
  }
  return l;
}

RadialState quadrant_state(const Lab& lab, const RadialGridPtr& g, double a1, double a2, double eps) {
  const RadialField rho = lab.spectral().rho_profile.resample(g);
  return RadialState(axpy(sample_W(g), eps * a1, rho), scaled(rho, eps * a2));
}

Line conservation(const Lab& lab) {
  Line l{5, "conservation, reversal, finite speed"};
  l.limit = 180.0;  // three runs
  const auto t0 = clk::now();
  EvolutionConfig c = lab.config().evolution;
  c.t_max = 50.0;
  c.stop_on_verdict = false;
  const EvolutionContext ctx{&lab.modulator(), c};
  const auto g = c.grid();

  // non-blow-up runs over [0, 50]: (W - eps rho, 0) forward and W + eps rho' backward
  double drift = 0.0;
  double worst_run = 0.0;
  for (const auto& [a1, a2] : {std::pair{-1.0, 0.0}, std::pair{0.0, -1.0}}) {
    const auto r0 = clk::now();
    const TrajectoryRecord r = evolve_direction(quadrant_state(lab, g, a1, a2, 1e-3), 1, ctx);
    worst_run = std::max(worst_run, since(r0));
    if (r.verdict == Verdict::Blowup || r.t.back() < 49.9) {
      l.pass = false;
      l.detail += "run (" + fmt("%g", a1) + "," + fmt("%g", a2) + ") did not reach t=50; ";
    }
    for (double e : r.E) drift = std::max(drift, std::abs(e - r.E[0]) / std::abs(r.E[0]));
  }
  l.pass = l.pass && drift <= 1e-6 && worst_run <= 60.0;
  l.detail += "energy drift " + fmt("%.2e", drift) + " (<=1e-6)";

  // time reversal: 1000 steps forward, flip u_t, 1000 steps, flip back.
  // Scattering side with an inward kick; a positive kick blows up before t = 5.
  const RadialWave rw(g, c.parallel);
  const RadialState s0 = axpy(quadrant_state(lab, g, -1, 0, 1e-3), 1.0, testsupport::bump(g, 0.0, 3.0, 1.0, -0.005));
  RadialState s = s0;
  for (int i = 0; i < 1000; ++i) s = rw.step(s, c.dt());
  s.u2 = scaled(s.u2, -1.0);
  for (int i = 0; i < 1000; ++i) s = rw.step(s, c.dt());
  s.u2 = scaled(s.u2, -1.0);
  // outside the domain of dependence of the boundary, which absorbs
  RadialState diff = axpy(s, -1.0, s0);
  const double r_in = c.r_max - 2 * 1000 * c.dt() - 5.0;
  const auto r = g->r();
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] > r_in) diff.u1.v[i] = diff.u2.v[i] = 0.0;
  const double rev = std::sqrt(norm_H2(diff) / norm_H2(s0));
  l.pass = l.pass && rev <= 1e-9;
  l.detail += ", reversal on r<" + fmt("%.0f", r_in) + " " + fmt("%.2e", rev) + " (<=1e-9)";

  // finite speed: data supported in r <= 9
  auto p = rw.to_phase(testsupport::bump(g, 0.4, 3.0, 1.0, 0.2));
  double ext = 0.0;
  for (int i = 1; i <= 6000; ++i) {
    rw.step(p, c.dt());
    if (i % 500 == 0) ext = std::max(ext, exterior_energy(rw.to_state(p), 9.0 + p.t + 0.5));
  }
  l.pass = l.pass && ext <= 1e-8;
  l.detail += ", exterior energy " + fmt("%.2e", ext) + " (<=1e-8)";
  l.seconds = since(t0);
  return l;
}

Line ejection(const Lab& lab) {
  Line l{6, "ejection rate"};
  l.limit = 120.0;
  const auto t0 = clk::now();
  const EvolutionConfig c = lab.config().evolution;
  const EvolutionContext ctx{&lab.modulator(), c};
  const double k = lab.spectral().k;
  const double C_sigma = 1.0;  // |sigma(t) - sigma(t0)| <= C d_W on the window
  for (double eps : {1e-3, 1e-4}) {
    for (double a1 : {1.0, -1.0}) {
      const TrajectoryRecord r = evolve_direction(quadrant_state(lab, c.grid(), a1, 0, eps), 1, ctx);
      const EjectionFit f = fit_ejection_rate(r, k, lab.thresholds());
      const bool ok = f.ok && std::abs(f.rate_over_k - 1.0) <= 0.05 && f.dW_monotone && f.sigma_ratio <= C_sigma &&
                      f.lambda1_sign == (a1 > 0 ? 1 : -1);
      l.pass = l.pass && ok;
      if (!l.detail.empty()) l.detail += "; ";
      l.detail += "eps=" + fmt("%.0e", eps) + (a1 > 0 ? " +rho" : " -rho") + ": rate/k=" + fmt("%.4f", f.rate_over_k) +
                  " mono=" + (f.dW_monotone ? "1" : "0") + " sigma/dW=" + fmt("%.3f", f.sigma_ratio);
      if (!f.ok) l.detail += " (" + f.message + ")";
    }
  }
  l.seconds = since(t0);
  return l;
}

}  // namespace

int main() {
  const auto t_all = clk::now();
  const fs::path out = "acceptance_out";
  fs::create_directories(out);
  const Lab& lab = testsupport::lab();
  std::printf("k = %.12f, delta_A = %.6f, delta_* = %.6f, eps_* = %.6f\n", lab.spectral().k, lab.thresholds().delta_A,
              lab.thresholds().delta_star, lab.thresholds().eps_star);

  std::vector<Line> lines;
  const StaticReport rep = run_static_suite(lab);
  std::ofstream(out / "static_report.json") << rep.to_json().dump(2) << "\n";
  lines.push_back(from_static(1, "ground-state identities", rep,
                              {"ground_state.K_over_gradW2", "ground_state.J_identity"}, 1.0));
  print(lines.back());
  lines.push_back(from_static(2, "spectral consistency", rep,
                              {"spectral.eigen_residual", "spectral.k_vs_shooting", "spectral.a_W_positive",
                               "spectral.b_W_positive", "spectral.b_W_formulas", "spectral.omega_gplus_gminus"},
                              10.0));
  print(lines.back());
  lines.push_back(from_static(3, "coercivity sampling", rep, {"coercivity.ratio_interval"}, 10.0));
  print(lines.back());
  lines.push_back(from_static(4, "modulation round trip and d_W", rep,
                              {"modulation.round_trip_radial", "modulation.round_trip_box", "modulation.dW_on_manifold",
                               "modulation.dW_squared_vs_linear"},
                              30.0));
  print(lines.back());

  lines.push_back(conservation(lab));
  print(lines.back());
  lines.push_back(ejection(lab));
  print(lines.back());

  // 7 and 8 share one sweep: 12 quadrant runs plus the randomized variants
  const auto t7 = clk::now();
  const Config& cfg = lab.config();
  const QuadrantTable t = run_quadrant_sweep(lab, {1e-3, 3e-3, 1e-2}, 20, cfg.seed, (out / "runs").string());
  write_quadrant_csv(t, (out / "quadrant_table.csv").string());
  const double sweep_s = since(t7);
  double quad_s = 0.0, var_s = 0.0;
  for (const auto& r : t.rows) (r.perturb == 0.0 ? quad_s : var_s) += r.runtime;
  {
    Line l{7, "four-quadrant table"};
    l.limit = 900.0;
    int mismatches = 0, undetermined = 0, runs = 0;
    double worst_lin = 0.0;
    for (const auto& r : t.rows) {
      if (r.perturb != 0.0) continue;
      ++runs;
      mismatches += !r.matches();
      undetermined += (r.forward == Verdict::Undetermined) + (r.backward == Verdict::Undetermined);
      worst_lin = std::max(worst_lin, r.linear_rel);
      if (!r.matches())
        l.detail += r.label + " got (" + to_string(r.backward) + "," + to_string(r.forward) + "); ";
    }
    l.pass = runs == 12 && mismatches == 0 && undetermined == 0 && worst_lin <= 0.1;
    l.detail += std::to_string(runs) + " runs, mismatches " + std::to_string(mismatches) + ", undetermined " +
                std::to_string(undetermined) + ", worst linearized deviation " + fmt("%.3f", worst_lin) + " (<=0.1)";
    l.seconds = quad_s;
    lines.push_back(l);
    print(l);
  }
  {
    Line l{8, "one-pass shadow"};
    l.limit = quad_s + 600.0;
    int violations = 0, variants = 0, variant_mismatch = 0;
    for (const auto& r : t.rows) {
      violations += !r.one_pass_ok;
      if (r.perturb != 0.0) {
        ++variants;
        variant_mismatch += !r.matches();
      }
    }
    l.pass = violations == 0 && variants == 20;
    l.detail = std::to_string(t.rows.size()) + " runs (" + std::to_string(variants) + " perturbed), violations " +
               std::to_string(violations) + "; perturbed runs with the unperturbed verdicts: " +
               std::to_string(variants - variant_mismatch) + "/" + std::to_string(variants);
    l.seconds = quad_s + var_s;
    lines.push_back(l);
    print(l);
  }
  std::printf("    (sweep wall time %.1f s)\n", sweep_s);

  lines.push_back(from_static(9, "boost identity", rep, {"boost.E2_minus_P2"}, 30.0));
  print(lines.back());

  int failed = 0;
  for (const auto& l : lines) failed += !(l.pass && l.seconds <= l.limit);
  std::printf("%d/%zu criteria pass, total %.1f s\n", static_cast<int>(lines.size()) - failed, lines.size(), since(t_all));
  return failed == 0 ? 0 : 1;
}
