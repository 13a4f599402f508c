#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation; vector variants are picked once at startup from what the
// CPU reports and must agree with the scalar path to a few ulp.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace nlssh::simd {

enum class Level { scalar, avx2, neon };

std::string_view to_string(Level level) noexcept;

struct KernelTable {
  Level level;

  // out[i] = alpha*x[i] + beta*x[i+shift], with x[j] = 0 outside [0, n).
  void (*shift_axpby)(double* out, const double* x, std::size_t n, double alpha, double beta,
                      std::ptrdiff_t shift);

  double (*sum_squares)(const double* x, std::size_t n);

  // out[i] = sqrt(max(0, v^2 + w^2 + 2 v w c[i]))
  void (*chiral_energy)(double* out, const double* cos_ka, std::size_t n, double v, double w);

  // out[i] = |h(ka[i])| for the order-1/2 truncated off-diagonal element
  // h = (v + w - [order==2] w/2 ka^2) + i w ka.
  void (*truncated_energy)(double* out, const double* ka, std::size_t n, double v, double w,
                           int order);
};

const KernelTable& scalar_kernels() noexcept;
#if defined(NLSSH_HAVE_AVX2)
const KernelTable& avx2_kernels() noexcept;
#endif
#if defined(NLSSH_HAVE_NEON)
const KernelTable& neon_kernels() noexcept;
#endif

/// Every table this binary was built with and this CPU can run; scalar first.
std::vector<const KernelTable*> available_kernels();

/// Table chosen at first use. NONLOCAL_SSH_SIMD=scalar forces the reference path.
const KernelTable& active() noexcept;

// Span conveniences over the active table.
void shift_axpby(std::span<double> out, std::span<const double> x, double alpha, double beta,
                 std::ptrdiff_t shift);
double sum_squares(std::span<const double> x);
void chiral_energy(std::span<double> out, std::span<const double> cos_ka, double v, double w);
void truncated_energy(std::span<double> out, std::span<const double> ka, double v, double w,
                      int order);

}  // namespace nlssh::simd
