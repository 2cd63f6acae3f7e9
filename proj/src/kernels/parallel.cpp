#include <algorithm>
#include <stdexcept>

#include "critwave/fd.hpp"
#include "critwave/kernels.hpp"

namespace critwave::kernels::parallel {

double dot(std::span<const double> w, std::span<const double> a) {
  return sum(w.size(), [&](std::size_t i) { return w[i] * a[i]; });
}

double dot(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  return sum(w.size(), [&](std::size_t i) { return w[i] * a[i] * b[i]; });
}

double dot(std::span<const double> w, std::span<const double> a, std::span<const double> b,
           std::span<const double> c) {
  return sum(w.size(), [&](std::size_t i) { return w[i] * a[i] * b[i] * c[i]; });
}

namespace {

// Value at signed index i >= -2, reflecting through the origin.
inline double at(std::span<const double> f, long long i, double sgn) {
  return i >= 0 ? f[static_cast<std::size_t>(i)] : sgn * f[static_cast<std::size_t>(-i - 1)];
}

// Splits [lo, hi) into the parts below 2, in [2, n - 2) and from n - 2 on;
// edge(i) handles the first and last, body(a, b) the middle.
template <class Edge, class Body>
void split_range(std::size_t lo, std::size_t hi, std::size_t n, Edge&& edge, Body&& body) {
  const std::size_t a = std::clamp<std::size_t>(2, lo, hi);
  const std::size_t b = std::clamp<std::size_t>(n - 2, a, hi);
  for (std::size_t i = lo; i < a; ++i) edge(i);
  body(a, b);
  for (std::size_t i = b; i < hi; ++i) edge(i);
}

}  // namespace

void diff_s(std::span<const double> f, Parity parity, double ds, std::span<double> out) {
  const std::size_t n = f.size();
  if (n < 6) throw std::invalid_argument("diff_s: need at least 6 nodes");
  const double sgn = parity == Parity::even ? 1.0 : -1.0;
  const double c = 1.0 / (12.0 * ds);
  const auto& st = UnitStencils::get();
  auto edge = [&](std::size_t iu) {
    const long long i = static_cast<long long>(iu);
    if (iu + 2 < n) {
      out[iu] = c * (at(f, i - 2, sgn) - 8.0 * at(f, i - 1, sgn) + 8.0 * f[iu + 1] - f[iu + 2]);
    } else {
      const auto& w = iu + 1 == n ? st.d1_end0 : st.d1_end1;
      double e = 0.0;
      for (std::size_t j = 0; j < 5; ++j) e += w[j] * f[n - 5 + j];
      out[iu] = e / ds;
    }
  };
  const double* p = f.data();
  double* q = out.data();
  for_blocks(n, [&](std::size_t lo, std::size_t hi) {
    split_range(lo, hi, n, edge, [&](std::size_t a, std::size_t b) {
#pragma omp simd
      for (std::size_t i = a; i < b; ++i) q[i] = c * (p[i - 2] - 8.0 * p[i - 1] + 8.0 * p[i + 1] - p[i + 2]);
    });
  });
}

void diff2_s(std::span<const double> f, Parity parity, double ds, std::span<double> out) {
  const std::size_t n = f.size();
  if (n < 6) throw std::invalid_argument("diff2_s: need at least 6 nodes");
  const double sgn = parity == Parity::even ? 1.0 : -1.0;
  const double c = 1.0 / (12.0 * ds * ds);
  const auto& st = UnitStencils::get();
  auto edge = [&](std::size_t iu) {
    const long long i = static_cast<long long>(iu);
    if (iu + 2 < n) {
      out[iu] = c * (-at(f, i - 2, sgn) + 16.0 * at(f, i - 1, sgn) - 30.0 * f[iu] + 16.0 * f[iu + 1] -
                     f[iu + 2]);
    } else {
      const auto& w = iu + 1 == n ? st.d2_end0 : st.d2_end1;
      double e = 0.0;
      for (std::size_t j = 0; j < 6; ++j) e += w[j] * f[n - 6 + j];
      out[iu] = e / (ds * ds);
    }
  };
  const double* p = f.data();
  double* q = out.data();
  for_blocks(n, [&](std::size_t lo, std::size_t hi) {
    split_range(lo, hi, n, edge, [&](std::size_t a, std::size_t b) {
#pragma omp simd
      for (std::size_t i = a; i < b; ++i)
        q[i] = c * (-p[i - 2] + 16.0 * p[i - 1] - 30.0 * p[i] + 16.0 * p[i + 1] - p[i + 2]);
    });
  });
}

void diff_axis(std::span<const double> f, std::size_t m, int axis, double h, std::span<double> out) {
  if (m < 6) throw std::invalid_argument("diff_axis: need at least 6 points per axis");
  const auto& st = UnitStencils::get();
  const double c = 1.0 / (12.0 * h);
  const double* p = f.data();
  double* q = out.data();
  if (axis == 2) {
    // contiguous lines
    const long long rows = static_cast<long long>(m * m);
#pragma omp parallel for schedule(static) if (m * m * m >= kParallelThreshold)
    for (long long row = 0; row < rows; ++row) {
      const double* v = p + static_cast<std::size_t>(row) * m;
      double* d = q + static_cast<std::size_t>(row) * m;
#pragma omp simd
      for (std::size_t i = 2; i < m - 2; ++i) d[i] = c * (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]);
      double r0 = 0.0, r1 = 0.0, l0 = 0.0, l1 = 0.0;
      for (std::size_t j = 0; j < 5; ++j) {
        r0 += st.d1_end0[j] * v[m - 5 + j];
        r1 += st.d1_end1[j] * v[m - 5 + j];
        l0 -= st.d1_end0[j] * v[4 - j];
        l1 -= st.d1_end1[j] * v[4 - j];
      }
      d[m - 1] = r0 / h;
      d[m - 2] = r1 / h;
      d[0] = l0 / h;
      d[1] = l1 / h;
    }
    return;
  }
  // axes 0 and 1: for each (outer, i) the derivative of a contiguous run of
  // `stride` lines at once
  const std::size_t stride = axis == 0 ? m * m : m;
  const std::size_t outer = m * m * m / (m * stride);
  const long long pairs = static_cast<long long>(outer * m);
#pragma omp parallel for schedule(static) if (m * m * m >= kParallelThreshold)
  for (long long oi = 0; oi < pairs; ++oi) {
    const std::size_t o = static_cast<std::size_t>(oi) / m;
    const std::size_t i = static_cast<std::size_t>(oi) % m;
    const double* v = p + o * m * stride;  // v[k * stride + s] is node k of line s
    double* d = q + o * m * stride + i * stride;
    if (i >= 2 && i + 2 < m) {
      const double* a = v + (i - 2) * stride;
      const double* b = v + (i - 1) * stride;
      const double* e = v + (i + 1) * stride;
      const double* g = v + (i + 2) * stride;
#pragma omp simd
      for (std::size_t s = 0; s < stride; ++s) d[s] = c * (a[s] - 8.0 * b[s] + 8.0 * e[s] - g[s]);
    } else {
      const bool right = i + 2 >= m;
      const auto& w = right ? (i + 1 == m ? st.d1_end0 : st.d1_end1) : (i == 0 ? st.d1_end0 : st.d1_end1);
      for (std::size_t s = 0; s < stride; ++s) {
        double acc = 0.0;
        if (right) {
          for (std::size_t j = 0; j < 5; ++j) acc += w[j] * v[(m - 5 + j) * stride + s];
        } else {
          for (std::size_t j = 0; j < 5; ++j) acc -= w[j] * v[(4 - j) * stride + s];
        }
        d[s] = acc / h;
      }
    }
  }
}

void wave_accel(std::span<const double> w, std::span<const double> r, double h, std::span<double> out) {
  const std::size_t n = w.size();
  const double c = 1.0 / (12.0 * h * h);
  auto edge = [&](std::size_t iu) {
    const long long i = static_cast<long long>(iu);
    double lap;
    if (iu + 2 < n) {
      lap = c * (-at(w, i - 2, -1.0) + 16.0 * at(w, i - 1, -1.0) - 30.0 * w[iu] + 16.0 * w[iu + 1] -
                 w[iu + 2]);
    } else if (iu + 2 == n) {
      lap = (w[iu - 1] - 2.0 * w[iu] + w[iu + 1]) / (h * h);
    } else {
      lap = 0.0;
    }
    const double u = w[iu] / r[iu];
    out[iu] = lap + u * u * u * u * w[iu];
  };
  const double* p = w.data();
  const double* rr = r.data();
  double* q = out.data();
  for_blocks(n, [&](std::size_t lo, std::size_t hi) {
    split_range(lo, hi, n, edge, [&](std::size_t a, std::size_t b) {
#pragma omp simd
      for (std::size_t i = a; i < b; ++i) {
        const double u = p[i] / rr[i];
        q[i] = c * (-p[i - 2] + 16.0 * p[i - 1] - 30.0 * p[i] + 16.0 * p[i + 1] - p[i + 2]) + u * u * u * u * p[i];
      }
    });
  });
}

}  // namespace critwave::kernels::parallel
