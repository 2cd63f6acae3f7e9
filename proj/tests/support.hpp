#pragma once

#include <memory>
#include <string>

#include "critwave/expcli.hpp"

namespace testsupport {

// Repo config with the constants file resolved against the source tree.
critwave::Config repo_config();
// Opened once per process from data/constants_d3.json.
const critwave::Lab& lab();

// a exp(-(r - r0)^2 / w^2) in u1 and b times the same in u2
critwave::RadialState bump(const critwave::RadialGridPtr& g, double a, double r0, double w, double b = 0.0);

double rel(double a, double b);

}  // namespace testsupport
