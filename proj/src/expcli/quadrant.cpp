#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include <omp.h>

#include "critwave/expcli.hpp"

namespace critwave {

std::pair<Verdict, Verdict> expected_verdicts(double a1, double a2) {
  // The sign of lambda1 at tau -> +-infinity decides: lambda1 > 0 ejects
  // towards K < 0 (blow-up), lambda1 < 0 towards K > 0 (scattering).
  auto fate = [](double l) { return l > 0.0 ? Verdict::Blowup : Verdict::Scatter; };
  if (a1 != 0.0) return {fate(a1), fate(a1)};
  return {fate(-a2), fate(a2)};
}

bool QuadrantTable::pattern_ok() const {
  for (const auto& r : rows)
    if (!r.matches()) return false;
  return !rows.empty();
}

int QuadrantTable::undetermined() const {
  int n = 0;
  for (const auto& r : rows) n += (r.forward == Verdict::Undetermined) + (r.backward == Verdict::Undetermined);
  return n;
}

bool QuadrantTable::one_pass_ok() const {
  for (const auto& r : rows)
    if (!r.one_pass_ok) return false;
  return true;
}

double QuadrantTable::worst_linear() const {
  double w = 0.0;
  for (const auto& r : rows)
    if (r.perturb == 0.0) w = std::max(w, r.linear_rel);
  return w;
}

QuadrantTable run_quadrant_sweep(const Lab& lab, const std::vector<double>& eps_list, int variants,
                                 std::uint64_t seed, const std::string& out_dir, int threads) {
  static const double kA[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  std::vector<ExperimentSpec> specs;
  char buf[96];
  for (double eps : eps_list) {
    for (const auto& a : kA) {
      ExperimentSpec s;
      s.a1 = a[0];
      s.a2 = a[1];
      s.eps = eps;
      std::snprintf(buf, sizeof buf, "q_%+g_%+g_eps%.0e", a[0], a[1], eps);
      s.name = buf;
      specs.push_back(s);
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_a(0, 3);
  std::uniform_int_distribution<std::size_t> pick_eps(0, eps_list.empty() ? 0 : eps_list.size() - 1);
  for (int v = 0; v < variants && !eps_list.empty(); ++v) {
    ExperimentSpec s;
    const int ia = pick_a(rng);
    s.a1 = kA[ia][0];
    s.a2 = kA[ia][1];
    s.eps = eps_list[pick_eps(rng)];
    s.perturb = lab.config().perturb_fraction;
    s.perturb_seed = rng();
    std::snprintf(buf, sizeof buf, "v%02d_%+g_%+g_eps%.0e", v, s.a1, s.a2, s.eps);
    s.name = buf;
    specs.push_back(s);
  }
  for (auto& s : specs) s.evolution = lab.config().evolution;

  QuadrantTable table;
  table.seed = seed;
  table.rows.resize(specs.size());
  const double k = lab.spectral().k;
  const Thresholds& th = lab.thresholds();
  std::string error;
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const ExperimentSpec& s = specs[i];
    QuadrantRow row;
    row.label = s.name;
    row.a1 = s.a1;
    row.a2 = s.a2;
    row.eps = s.eps;
    row.perturb = s.perturb;
    std::tie(row.expected_backward, row.expected_forward) = expected_verdicts(s.a1, s.a2);
    try {
      const RunOutput out = run_experiment(s, lab, out_dir);
      row.forward = out.result.forward.verdict;
      row.backward = out.result.backward.verdict;
      row.ejection_rate = out.ejection_forward.ok ? out.ejection_forward.rate_over_k : 0.0;
      // early-time linearized forms; backward time flips a2
      const double cap = std::min(10.0 * s.eps, th.delta_H);
      const auto lf = linearized_check(out.result.forward, k, s.a1, s.a2, s.eps, cap);
      const auto lb = linearized_check(out.result.backward, k, s.a1, -s.a2, s.eps, cap);
      row.linear_rel = std::max(lf.max_rel, lb.max_rel);
      row.one_pass_ok = !one_pass_violation(out.result.forward, th.delta_star) &&
                        !one_pass_violation(out.result.backward, th.delta_star);
      row.runtime = out.runtime;
    } catch (const std::exception& e) {
#pragma omp critical
      error = s.name + ": " + e.what();
    }
    table.rows[i] = row;
  }
  if (!error.empty()) throw std::runtime_error("quadrant sweep: " + error);
  if (!out_dir.empty()) write_quadrant_csv(table, (std::filesystem::path(out_dir) / "quadrant_table.csv").string());
  return table;
}

void write_quadrant_csv(const QuadrantTable& t, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "label,a1,a2,eps,perturb,verdict_backward,verdict_forward,expected_backward,expected_forward,"
        "ejection_rate,linear_rel,one_pass_ok,runtime\n";
  for (const auto& r : t.rows) {
    os << r.label << ',' << r.a1 << ',' << r.a2 << ',' << r.eps << ',' << r.perturb << ',' << to_string(r.backward)
       << ',' << to_string(r.forward) << ',' << to_string(r.expected_backward) << ','
       << to_string(r.expected_forward) << ',' << r.ejection_rate << ',' << r.linear_rel << ','
       << (r.one_pass_ok ? 1 : 0) << ',' << r.runtime << '\n';
  }
}

}  // namespace critwave
