#include "critwave/field_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace critwave {

void write_radial(const std::string& path, const RadialField& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  const RadialGrid& g = *f.grid;
  os << std::setprecision(17);
  os << "# d=" << g.d() << " n=" << g.n() << " r_max=" << g.r_max() << "\n";
  os << "# map=" << to_string(g.map()) << " core=" << g.core() << "\n";
  const auto r = g.r();
  for (std::size_t i = 0; i < g.n(); ++i) os << r[i] << " " << f.v[i] << "\n";
}

RadialField read_radial(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  int d = 0;
  std::size_t n = 0;
  double r_max = 0.0, core = 1.0;
  GridMap map = GridMap::uniform;
  bool have_map = false;
  std::vector<double> rs, vs;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string tok;
      while (ls >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "d") d = std::stoi(val);
        else if (key == "n") n = std::stoul(val);
        else if (key == "r_max") r_max = std::stod(val);
        else if (key == "core") core = std::stod(val);
        else if (key == "map") {
          map = grid_map_from_string(val);
          have_map = true;
        }
      }
      continue;
    }
    std::istringstream ls(line);
    double r, v;
    if (!(ls >> r >> v)) throw std::runtime_error(path + ": malformed line '" + line + "'");
    rs.push_back(r);
    vs.push_back(v);
  }
  if (d == 0 || n == 0 || r_max <= 0.0) throw std::runtime_error(path + ": missing header");
  if (rs.size() != n) throw std::runtime_error(path + ": header n does not match data");
  auto g = RadialGrid::make(d, n, r_max, map, core);
  const auto gr = g->r();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(gr[i] - rs[i]) > 1e-9 * std::max(1.0, rs[i])) {
      throw std::runtime_error(path + (have_map ? ": r column does not match the grid header"
                                                 : ": no map line and r column is not uniform"));
    }
  }
  return RadialField(g, std::move(vs));
}

void write_box(const std::string& path, const BoxField& f) {
  static_assert(std::endian::native == std::endian::little, "raw field IO assumes a little-endian host");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os.write(reinterpret_cast<const char*>(f.v.data()), static_cast<std::streamsize>(f.v.size() * sizeof(double)));
  const Box3DGrid& g = *f.grid;
  nlohmann::json j = {{"d", 3},          {"m", g.m()},      {"L", g.L()},
                      {"map", to_string(g.map())}, {"core", g.core()}, {"dtype", "float64"},
                      {"order", "row-major, axis 0 slowest"}};
  std::ofstream js(path + ".json");
  js << j.dump(2) << "\n";
}

BoxField read_box(const std::string& path) {
  std::ifstream js(path + ".json");
  if (!js) throw std::runtime_error("cannot read " + path + ".json");
  nlohmann::json j;
  js >> j;
  auto g = Box3DGrid::make(j.at("m").get<std::size_t>(), j.at("L").get<double>(),
                           grid_map_from_string(j.at("map").get<std::string>()), j.value("core", 1.0));
  BoxField f(g);
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  is.read(reinterpret_cast<char*>(f.v.data()), static_cast<std::streamsize>(f.v.size() * sizeof(double)));
  if (is.gcount() != static_cast<std::streamsize>(f.v.size() * sizeof(double))) {
    throw std::runtime_error(path + ": short read");
  }
  return f;
}

}  // namespace critwave
