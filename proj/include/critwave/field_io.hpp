#pragma once

#include <string>

#include "critwave/field.hpp"

namespace critwave {

// Text columns: header lines "# d=<int> n=<int> r_max=<float>" and
// "# map=<uniform|sinh> core=<float>", then one "r value" pair per line.
void write_radial(const std::string& path, const RadialField& f);
// Missing map line: the grid must be uniform, which is checked against r.
RadialField read_radial(const std::string& path);

// Raw little-endian float64 block at `path` plus a JSON sidecar `path.json`.
void write_box(const std::string& path, const BoxField& f);
BoxField read_box(const std::string& path);

}  // namespace critwave
