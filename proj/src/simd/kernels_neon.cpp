// NEON variants for aarch64, where Advanced SIMD is architecturally
// guaranteed. Operation order mirrors the scalar kernels.

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "nlssh/simd/kernels.hpp"

namespace nlssh::simd {
namespace {

void shift_axpby_neon(double* out, const double* x, std::size_t n, double alpha, double beta,
                      std::ptrdiff_t shift) {
  const auto sn = static_cast<std::ptrdiff_t>(n);
  const std::ptrdiff_t lo = std::clamp<std::ptrdiff_t>(-shift, 0, sn);
  const std::ptrdiff_t hi = std::clamp<std::ptrdiff_t>(sn - shift, lo, sn);

  for (std::ptrdiff_t i = 0; i < lo; ++i) out[i] = alpha * x[i] + beta * 0.0;

  const float64x2_t va = vdupq_n_f64(alpha);
  const float64x2_t vb = vdupq_n_f64(beta);
  std::ptrdiff_t i = lo;
  for (; i + 2 <= hi; i += 2) {
    const float64x2_t xi = vld1q_f64(x + i);
    const float64x2_t xj = vld1q_f64(x + i + shift);
    vst1q_f64(out + i, vaddq_f64(vmulq_f64(va, xi), vmulq_f64(vb, xj)));
  }
  for (; i < hi; ++i) out[i] = alpha * x[i] + beta * x[i + shift];

  for (std::ptrdiff_t k = hi; k < sn; ++k) out[k] = alpha * x[k] + beta * 0.0;
}

double sum_squares_neon(const double* x, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t a = vld1q_f64(x + i);
    const float64x2_t b = vld1q_f64(x + i + 2);
    acc0 = vaddq_f64(acc0, vmulq_f64(a, a));
    acc1 = vaddq_f64(acc1, vmulq_f64(b, b));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

void chiral_energy_neon(double* out, const double* c, std::size_t n, double v, double w) {
  const double base = v * v + w * w;
  const double cross = 2.0 * v * w;
  const float64x2_t vbase = vdupq_n_f64(base);
  const float64x2_t vcross = vdupq_n_f64(cross);
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t e2 = vaddq_f64(vbase, vmulq_f64(vcross, vld1q_f64(c + i)));
    vst1q_f64(out + i, vsqrtq_f64(vmaxq_f64(zero, e2)));
  }
  for (; i < n; ++i) out[i] = std::sqrt(std::max(0.0, base + cross * c[i]));
}

void truncated_energy_neon(double* out, const double* ka, std::size_t n, double v, double w,
                           int order) {
  const double s = v + w;
  const double curv = order == 2 ? -0.5 * w : 0.0;
  const float64x2_t vs = vdupq_n_f64(s);
  const float64x2_t vcurv = vdupq_n_f64(curv);
  const float64x2_t vw = vdupq_n_f64(w);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t k = vld1q_f64(ka + i);
    const float64x2_t re = vaddq_f64(vs, vmulq_f64(vmulq_f64(vcurv, k), k));
    const float64x2_t im = vmulq_f64(vw, k);
    vst1q_f64(out + i, vsqrtq_f64(vaddq_f64(vmulq_f64(re, re), vmulq_f64(im, im))));
  }
  for (; i < n; ++i) {
    const double re = s + (curv * ka[i]) * ka[i];
    const double im = w * ka[i];
    out[i] = std::sqrt(re * re + im * im);
  }
}

constexpr KernelTable kNeon{Level::neon, shift_axpby_neon, sum_squares_neon, chiral_energy_neon,
                            truncated_energy_neon};

}  // namespace

const KernelTable& neon_kernels() noexcept { return kNeon; }

}  // namespace nlssh::simd
