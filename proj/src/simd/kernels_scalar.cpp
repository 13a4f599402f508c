#include <algorithm>
#include <cmath>

#include "nlssh/simd/kernels.hpp"

namespace nlssh::simd {
namespace {

void shift_axpby_scalar(double* out, const double* x, std::size_t n, double alpha, double beta,
                        std::ptrdiff_t shift) {
  const auto sn = static_cast<std::ptrdiff_t>(n);
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    const std::ptrdiff_t j = i + shift;
    const double neighbour = (j >= 0 && j < sn) ? x[j] : 0.0;
    out[i] = alpha * x[i] + beta * neighbour;
  }
}

double sum_squares_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

void chiral_energy_scalar(double* out, const double* c, std::size_t n, double v, double w) {
  const double base = v * v + w * w;
  const double cross = 2.0 * v * w;
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(std::max(0.0, base + cross * c[i]));
}

void truncated_energy_scalar(double* out, const double* ka, std::size_t n, double v, double w,
                             int order) {
  const double s = v + w;
  const double curv = order == 2 ? -0.5 * w : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = s + (curv * ka[i]) * ka[i];
    const double im = w * ka[i];
    out[i] = std::sqrt(re * re + im * im);
  }
}

constexpr KernelTable kScalar{Level::scalar, shift_axpby_scalar, sum_squares_scalar,
                              chiral_energy_scalar, truncated_energy_scalar};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

}  // namespace nlssh::simd
