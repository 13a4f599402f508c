#include <cstdlib>
#include <string>

#include "nlssh/simd/kernels.hpp"

namespace nlssh::simd {

std::string_view to_string(Level level) noexcept {
  switch (level) {
    case Level::scalar: return "scalar";
    case Level::avx2: return "avx2";
    case Level::neon: return "neon";
  }
  return "unknown";
}

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
#if defined(NLSSH_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) out.push_back(&avx2_kernels());
#endif
#if defined(NLSSH_HAVE_NEON)
  out.push_back(&neon_kernels());
#endif
  return out;
}

namespace {

const KernelTable& select() noexcept {
  if (const char* env = std::getenv("NONLOCAL_SSH_SIMD"); env && std::string(env) == "scalar")
    return scalar_kernels();
  return *available_kernels().back();
}

}  // namespace

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

void shift_axpby(std::span<double> out, std::span<const double> x, double alpha, double beta,
                 std::ptrdiff_t shift) {
  active().shift_axpby(out.data(), x.data(), x.size(), alpha, beta, shift);
}

double sum_squares(std::span<const double> x) { return active().sum_squares(x.data(), x.size()); }

void chiral_energy(std::span<double> out, std::span<const double> cos_ka, double v, double w) {
  active().chiral_energy(out.data(), cos_ka.data(), cos_ka.size(), v, w);
}

void truncated_energy(std::span<double> out, std::span<const double> ka, double v, double w,
                      int order) {
  active().truncated_energy(out.data(), ka.data(), ka.size(), v, w, order);
}

}  // namespace nlssh::simd
