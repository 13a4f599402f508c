#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's solvers; matrices are plain row-major vectors.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense zeros(std::size_t n) { return Dense(n, std::vector<double>(n, 0.0)); }

/// Cyclic Jacobi rotations until the off-diagonal mass is negligible; ascending eigenvalues.
inline std::vector<double> jacobi_eigenvalues(Dense a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        scale += a[i][j] * a[i][j];
        if (i != j) off += a[i][j] * a[i][j];
      }
    if (off <= 1e-30 * std::max(scale, 1e-300)) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Eigenvalues of a Hermitian n x n matrix through the real 2n x 2n embedding
/// [[Re, -Im], [Im, Re]], whose spectrum is the original one doubled.
inline std::vector<double> hermitian_eigenvalues(const std::vector<std::vector<std::complex<double>>>& h) {
  const std::size_t n = h.size();
  Dense r = zeros(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      r[i][j] = h[i][j].real();
      r[i + n][j + n] = h[i][j].real();
      r[i][j + n] = -h[i][j].imag();
      r[i + n][j] = h[i][j].imag();
    }
  const auto doubled = jacobi_eigenvalues(r);
  std::vector<double> ev;
  for (std::size_t i = 0; i < doubled.size(); i += 2) ev.push_back(doubled[i]);
  return ev;
}

/// Open SSH chain, site order A0 B0 A1 B1 ...
inline Dense ssh_chain(std::size_t cells, double v, double w) {
  Dense h = zeros(2 * cells);
  for (std::size_t c = 0; c < cells; ++c) {
    h[2 * c][2 * c + 1] = h[2 * c + 1][2 * c] = v;
    if (c + 1 < cells) h[2 * c + 1][2 * c + 2] = h[2 * c + 2][2 * c + 1] = w;
  }
  return h;
}

/// Box operator written row by row: A_i couples to B_i (v0) and B_{i-m} (w0);
/// B_i couples to A_i (v0) and A_{i+m} (w0). Basis A_0..A_{P-1}, B_0..B_{P-1}.
inline Dense box_operator(std::size_t points, std::size_t m, double v0, double w0) {
  Dense h = zeros(2 * points);
  for (std::size_t i = 0; i < points; ++i) {
    h[i][points + i] = v0;
    if (i >= m) h[i][points + i - m] = w0;
    h[points + i][i] = v0;
    if (i + m < points) h[points + i][i + m] = w0;
  }
  return h;
}

/// arg(v + w e^{-i k a}) straight from std::arg on the complex number.
inline double phi(double v, double w, double a, double k) {
  return std::arg(std::complex<double>(v, 0.0) + w * std::exp(std::complex<double>(0.0, -k * a)));
}

inline double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return x.size() == y.size() ? d : INFINITY;
}

}  // namespace oracle
