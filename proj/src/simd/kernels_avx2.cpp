// AVX2 variants. Functions carry their own target attribute so the rest of
// the library stays baseline x86-64. Operation order mirrors the scalar
// kernels (no FMA) so elementwise results are bit-identical.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "nlssh/simd/kernels.hpp"

#define NLSSH_AVX2 __attribute__((target("avx2")))

namespace nlssh::simd {
namespace {

NLSSH_AVX2 void shift_axpby_avx2(double* out, const double* x, std::size_t n, double alpha,
                                 double beta, std::ptrdiff_t shift) {
  const auto sn = static_cast<std::ptrdiff_t>(n);
  const std::ptrdiff_t lo = std::clamp<std::ptrdiff_t>(-shift, 0, sn);
  const std::ptrdiff_t hi = std::clamp<std::ptrdiff_t>(sn - shift, lo, sn);

  for (std::ptrdiff_t i = 0; i < lo; ++i) out[i] = alpha * x[i] + beta * 0.0;

  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  std::ptrdiff_t i = lo;
  for (; i + 4 <= hi; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    const __m256d xj = _mm256_loadu_pd(x + i + shift);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(va, xi), _mm256_mul_pd(vb, xj)));
  }
  for (; i < hi; ++i) out[i] = alpha * x[i] + beta * x[i + shift];

  for (std::ptrdiff_t k = hi; k < sn; ++k) out[k] = alpha * x[k] + beta * 0.0;
}

NLSSH_AVX2 double sum_squares_avx2(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a = _mm256_loadu_pd(x + i);
    const __m256d b = _mm256_loadu_pd(x + i + 4);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(a, a));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(b, b));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

NLSSH_AVX2 void chiral_energy_avx2(double* out, const double* c, std::size_t n, double v,
                                   double w) {
  const double base = v * v + w * w;
  const double cross = 2.0 * v * w;
  const __m256d vbase = _mm256_set1_pd(base);
  const __m256d vcross = _mm256_set1_pd(cross);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d e2 = _mm256_add_pd(vbase, _mm256_mul_pd(vcross, _mm256_loadu_pd(c + i)));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(_mm256_max_pd(e2, zero)));
  }
  for (; i < n; ++i) out[i] = std::sqrt(std::max(0.0, base + cross * c[i]));
}

NLSSH_AVX2 void truncated_energy_avx2(double* out, const double* ka, std::size_t n, double v,
                                      double w, int order) {
  const double s = v + w;
  const double curv = order == 2 ? -0.5 * w : 0.0;
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d vcurv = _mm256_set1_pd(curv);
  const __m256d vw = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d k = _mm256_loadu_pd(ka + i);
    const __m256d re = _mm256_add_pd(vs, _mm256_mul_pd(_mm256_mul_pd(vcurv, k), k));
    const __m256d im = _mm256_mul_pd(vw, k);
    const __m256d r2 = _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(r2));
  }
  for (; i < n; ++i) {
    const double re = s + (curv * ka[i]) * ka[i];
    const double im = w * ka[i];
    out[i] = std::sqrt(re * re + im * im);
  }
}

constexpr KernelTable kAvx2{Level::avx2, shift_axpby_avx2, sum_squares_avx2, chiral_energy_avx2,
                            truncated_energy_avx2};

}  // namespace

const KernelTable& avx2_kernels() noexcept { return kAvx2; }

}  // namespace nlssh::simd
