#include <cmath>
#include <stdexcept>

#include "critwave/fd.hpp"
#include "critwave/kernels.hpp"

namespace critwave::kernels::serial {

double dot(std::span<const double> w, std::span<const double> a) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * a[i];
  return s;
}

double dot(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * a[i] * b[i];
  return s;
}

double dot(std::span<const double> w, std::span<const double> a, std::span<const double> b,
           std::span<const double> c) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * a[i] * b[i] * c[i];
  return s;
}

namespace {

// f with two parity ghosts prepended.
std::vector<double> pad_origin(std::span<const double> f, Parity parity) {
  const double sgn = parity == Parity::even ? 1.0 : -1.0;
  std::vector<double> g(f.size() + 2);
  g[0] = sgn * f[1];
  g[1] = sgn * f[0];
  for (std::size_t i = 0; i < f.size(); ++i) g[i + 2] = f[i];
  return g;
}

}  // namespace

void diff_s(std::span<const double> f, Parity parity, double ds, std::span<double> out) {
  const std::size_t n = f.size();
  if (n < 6) throw std::invalid_argument("diff_s: need at least 6 nodes");
  const auto g = pad_origin(f, parity);
  const double c = 1.0 / (12.0 * ds);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    out[i] = c * (g[i] - 8.0 * g[i + 1] + 8.0 * g[i + 3] - g[i + 4]);
  }
  const auto& st = UnitStencils::get();
  double e0 = 0.0, e1 = 0.0;
  for (std::size_t j = 0; j < 5; ++j) {
    e0 += st.d1_end0[j] * f[n - 5 + j];
    e1 += st.d1_end1[j] * f[n - 5 + j];
  }
  out[n - 1] = e0 / ds;
  out[n - 2] = e1 / ds;
}

void diff2_s(std::span<const double> f, Parity parity, double ds, std::span<double> out) {
  const std::size_t n = f.size();
  if (n < 6) throw std::invalid_argument("diff2_s: need at least 6 nodes");
  const auto g = pad_origin(f, parity);
  const double c = 1.0 / (12.0 * ds * ds);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    out[i] = c * (-g[i] + 16.0 * g[i + 1] - 30.0 * g[i + 2] + 16.0 * g[i + 3] - g[i + 4]);
  }
  const auto& st = UnitStencils::get();
  double e0 = 0.0, e1 = 0.0;
  for (std::size_t j = 0; j < 6; ++j) {
    e0 += st.d2_end0[j] * f[n - 6 + j];
    e1 += st.d2_end1[j] * f[n - 6 + j];
  }
  out[n - 1] = e0 / (ds * ds);
  out[n - 2] = e1 / (ds * ds);
}

void diff_axis(std::span<const double> f, std::size_t m, int axis, double h, std::span<double> out) {
  if (m < 6) throw std::invalid_argument("diff_axis: need at least 6 points per axis");
  const std::size_t stride = axis == 0 ? m * m : (axis == 1 ? m : 1);
  const auto& st = UnitStencils::get();
  const double c = 1.0 / (12.0 * h);
  std::vector<double> line(m), dline(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      // base index of the line through (a, b) along `axis`
      std::size_t base;
      if (axis == 0) base = a * m + b;
      else if (axis == 1) base = a * m * m + b;
      else base = (a * m + b) * m;
      for (std::size_t i = 0; i < m; ++i) line[i] = f[base + i * stride];
      for (std::size_t i = 2; i + 2 < m; ++i) {
        dline[i] = c * (line[i - 2] - 8.0 * line[i - 1] + 8.0 * line[i + 1] - line[i + 2]);
      }
      double r0 = 0.0, r1 = 0.0, l0 = 0.0, l1 = 0.0;
      for (std::size_t j = 0; j < 5; ++j) {
        r0 += st.d1_end0[j] * line[m - 5 + j];
        r1 += st.d1_end1[j] * line[m - 5 + j];
        l0 -= st.d1_end0[j] * line[4 - j];
        l1 -= st.d1_end1[j] * line[4 - j];
      }
      dline[m - 1] = r0 / h;
      dline[m - 2] = r1 / h;
      dline[0] = l0 / h;
      dline[1] = l1 / h;
      for (std::size_t i = 0; i < m; ++i) out[base + i * stride] = dline[i];
    }
  }
}

void wave_accel(std::span<const double> w, std::span<const double> r, double h, std::span<double> out) {
  const std::size_t n = w.size();
  const auto g = pad_origin(w, Parity::odd);
  const double c = 1.0 / (12.0 * h * h);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    out[i] = c * (-g[i] + 16.0 * g[i + 1] - 30.0 * g[i + 2] + 16.0 * g[i + 3] - g[i + 4]);
  }
  out[n - 2] = (w[n - 3] - 2.0 * w[n - 2] + w[n - 1]) / (h * h);
  out[n - 1] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = w[i] / r[i];
    out[i] += u * u * u * u * w[i];
  }
}

}  // namespace critwave::kernels::serial
