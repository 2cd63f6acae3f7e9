#pragma once

// Data-parallel inner loops. Every kernel exists twice: a plain serial
// reference (`serial::`) kept for testing and benchmarking, and an OpenMP
// version (`parallel::`) used by the library. Parallel reductions sum
// fixed-size blocks and combine the block sums in order, so their result
// does not depend on the thread count.

#include <cstddef>
#include <span>
#include <vector>

namespace critwave::kernels {

enum class Parity { even, odd };

inline constexpr std::size_t kBlock = 2048;
// Below this size the OpenMP kernels do not open a parallel region.
inline constexpr std::size_t kParallelThreshold = 1 << 14;

namespace serial {

double dot(std::span<const double> w, std::span<const double> a);
double dot(std::span<const double> w, std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> w, std::span<const double> a, std::span<const double> b,
           std::span<const double> c);

// 4th-order d/ds and d2/ds2 on the cell-centred grid s_i = (i + 1/2) ds.
// The origin is handled by parity ghosts, the outer edge by one-sided stencils.
void diff_s(std::span<const double> f, Parity parity, double ds, std::span<double> out);
void diff2_s(std::span<const double> f, Parity parity, double ds, std::span<double> out);

// 4th-order derivative along one axis of an m^3 box (row-major, axis 0 slowest),
// one-sided at both faces.
void diff_axis(std::span<const double> f, std::size_t m, int axis, double h, std::span<double> out);

// w_rr + |w|^4 w / r^4 for the d = 3 radial wave equation in w = r u,
// odd ghosts at the origin. The second-to-last node uses the 3-point stencil;
// the last node gets only the nonlinear term (the boundary condition owns it).
void wave_accel(std::span<const double> w, std::span<const double> r, double h, std::span<double> out);

template <class F>
double sum(std::size_t n, F&& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += f(i);
  return s;
}

}  // namespace serial

namespace parallel {

double dot(std::span<const double> w, std::span<const double> a);
double dot(std::span<const double> w, std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> w, std::span<const double> a, std::span<const double> b,
           std::span<const double> c);
void diff_s(std::span<const double> f, Parity parity, double ds, std::span<double> out);
void diff2_s(std::span<const double> f, Parity parity, double ds, std::span<double> out);
void diff_axis(std::span<const double> f, std::size_t m, int axis, double h, std::span<double> out);
void wave_accel(std::span<const double> w, std::span<const double> r, double h, std::span<double> out);

// Deterministic blocked reduction of f(0) + ... + f(n-1).
template <class F>
double sum(std::size_t n, F&& f) {
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, 0.0);
  const long long nb = static_cast<long long>(nblocks);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (long long b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f(i);
    partial[static_cast<std::size_t>(b)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

template <class F>
void for_each(std::size_t n, F&& f) {
  const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (long long i = 0; i < nn; ++i) f(static_cast<std::size_t>(i));
}

// f(lo, hi) over consecutive blocks of kBlock indices.
template <class F>
void for_blocks(std::size_t n, F&& f) {
  const long long nb = static_cast<long long>((n + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (long long b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    f(lo, lo + kBlock < n ? lo + kBlock : n);
  }
}

}  // namespace parallel

}  // namespace critwave::kernels
