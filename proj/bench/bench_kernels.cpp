// Serial reference vs OpenMP kernels. Range argument: problem size
// (points for 1-D kernels, edge length for the box derivative).

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "critwave/kernels.hpp"

namespace kn = critwave::kernels;

namespace {

std::vector<double> ramp(std::size_t n, double scale) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(scale * static_cast<double>(i) + 0.3);
  return v;
}

template <bool Par>
void BM_dot(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto w = ramp(n, 1e-3), a = ramp(n, 2e-3), b = ramp(n, 3e-3);
  for (auto _ : st) {
    double s = Par ? kn::parallel::dot(w, a, b) : kn::serial::dot(w, a, b);
    benchmark::DoNotOptimize(s);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(n));
}

template <bool Par>
void BM_diff2_s(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto f = ramp(n, 1e-3);
  std::vector<double> out(n);
  for (auto _ : st) {
    if (Par)
      kn::parallel::diff2_s(f, kn::Parity::even, 0.01, out);
    else
      kn::serial::diff2_s(f, kn::Parity::even, 0.01, out);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(n));
}

template <bool Par>
void BM_wave_accel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const double h = 0.02;
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = (static_cast<double>(i) + 0.5) * h;
  auto w = ramp(n, 1e-3);
  for (std::size_t i = 0; i < n; ++i) w[i] *= r[i] / (1.0 + r[i] * r[i]);
  std::vector<double> out(n);
  for (auto _ : st) {
    if (Par)
      kn::parallel::wave_accel(w, r, h, out);
    else
      kn::serial::wave_accel(w, r, h, out);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(n));
}

template <bool Par>
void BM_diff_axis(benchmark::State& st) {
  const auto m = static_cast<std::size_t>(st.range(0));
  const auto f = ramp(m * m * m, 1e-4);
  std::vector<double> out(f.size());
  for (auto _ : st) {
    for (int ax = 0; ax < 3; ++ax) {
      if (Par)
        kn::parallel::diff_axis(f, m, ax, 0.1, out);
      else
        kn::serial::diff_axis(f, m, ax, 0.1, out);
    }
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * 3 * static_cast<long long>(f.size()));
}

}  // namespace

BENCHMARK(BM_dot<false>)->Arg(10000)->Arg(1 << 20);
BENCHMARK(BM_dot<true>)->Arg(10000)->Arg(1 << 20);
BENCHMARK(BM_diff2_s<false>)->Arg(10000)->Arg(1 << 20);
BENCHMARK(BM_diff2_s<true>)->Arg(10000)->Arg(1 << 20);
BENCHMARK(BM_wave_accel<false>)->Arg(10000)->Arg(1 << 20);
BENCHMARK(BM_wave_accel<true>)->Arg(10000)->Arg(1 << 20);
BENCHMARK(BM_diff_axis<false>)->Arg(40)->Arg(96);
BENCHMARK(BM_diff_axis<true>)->Arg(40)->Arg(96);

BENCHMARK_MAIN();
