#include "support.hpp"

#include <cmath>

namespace testsupport {

using namespace critwave;

Config repo_config() {
  Config cfg = load_config(std::string(CRITWAVE_SOURCE_DIR) + "/config/defaults.ini");
  cfg.constants_path = std::string(CRITWAVE_SOURCE_DIR) + "/data/constants_d3.json";
  return cfg;
}

const Lab& lab() {
  static const std::shared_ptr<const Lab> l = Lab::open(repo_config(), false);
  return *l;
}

RadialState bump(const RadialGridPtr& g, double a, double r0, double w, double b) {
  RadialState s(g);
  const auto r = g->r();
  for (std::size_t i = 0; i < g->n(); ++i) {
    const double x = (r[i] - r0) / w;
    const double e = std::exp(-x * x);
    s.u1.v[i] = a * e;
    s.u2.v[i] = b * e;
  }
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testsupport
