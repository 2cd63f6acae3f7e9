#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "critwave/dynamics.hpp"

namespace critwave {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json direction_json(const TrajectoryRecord& r) {
  nlohmann::json j;
  j["verdict"] = to_string(r.verdict);
  j["verdict_time"] = r.verdict_time;
  j["blowup_confirmed"] = r.blowup_confirmed;
  j["note"] = r.note;
  j["steps"] = r.steps;
  j["monitors"] = r.size();
  return j;
}

}  // namespace

void write_record_csv(const TrajectoryRecord& rec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,tau,E,K,dW,lambda1,sigma,Eext,Vw,equip\n";
  for (std::size_t i = 0; i < rec.size(); ++i) {
    out << fmt(rec.t[i]) << ',' << fmt(rec.tau[i]) << ',' << fmt(rec.E[i]) << ',' << fmt(rec.K[i]) << ','
        << fmt(rec.dW[i]) << ',' << fmt(rec.lambda1[i]) << ',' << fmt(rec.sigma[i]) << ',' << fmt(rec.Eext[i])
        << ',' << fmt(rec.Vw[i]) << ',' << fmt(rec.equip[i]) << '\n';
  }
}

TrajectoryRecord read_record_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  std::getline(in, line);
  if (line != "t,tau,E,K,dW,lambda1,sigma,Eext,Vw,equip") throw std::runtime_error(path + ": unexpected header");
  TrajectoryRecord rec;
  std::vector<double>* cols[] = {&rec.t, &rec.tau, &rec.E, &rec.K, &rec.dW,
                                 &rec.lambda1, &rec.sigma, &rec.Eext, &rec.Vw, &rec.equip};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    for (auto* c : cols) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error(path + ": short row");
      c->push_back(std::strtod(cell.c_str(), nullptr));
    }
    rec.fit_ok.push_back(std::isfinite(rec.lambda1.back()) ? 1 : 0);
  }
  return rec;
}

void write_verdict_json(const EvolutionResult& res, const std::string& path, const std::string& extra_json) {
  nlohmann::json j = nlohmann::json::parse(extra_json);
  j["forward"] = direction_json(res.forward);
  j["backward"] = direction_json(res.backward);
  j["verdict_forward"] = to_string(res.forward.verdict);
  j["verdict_backward"] = to_string(res.backward.verdict);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace critwave
