#include "critwave/modulation.hpp"

namespace critwave {

Thresholds Thresholds::chain(double delta_A, double C_d0) {
  Thresholds t;
  t.delta_A = delta_A;
  t.delta_E = delta_A / 2.0;
  t.delta_H = delta_A / 4.0;
  t.delta_S = delta_A / 8.0;
  t.delta_star = delta_A / 16.0;
  t.eps_star = delta_A / 32.0;
  t.C_d0 = C_d0;
  return t;
}

bool Thresholds::ordered() const {
  return 0.0 < eps_star && eps_star < delta_star && delta_star < delta_S && delta_S < delta_H &&
         delta_H < delta_E && delta_E < delta_A && C_d0 > 0.0;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::inner: return "inner";
    case Regime::blend: return "blend";
    default: return "outer";
  }
}

}  // namespace critwave
