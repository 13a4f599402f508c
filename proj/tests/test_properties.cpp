#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "nlssh/bulk.hpp"
#include "nlssh/edge.hpp"
#include "nlssh/finite.hpp"
#include "nlssh/local_approx.hpp"
#include "oracle.hpp"

using namespace nlssh;

namespace {

constexpr double pi = std::numbers::pi;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  double sign() { return integer(0, 1) ? 1.0 : -1.0; }

  // Couplings bounded away from |v| = |w|.
  BulkParams gapped_bulk() {
    const double w = sign() * uniform(0.3, 2.0);
    double v = sign() * uniform(0.0, 2.5);
    if (std::abs(std::abs(v) - std::abs(w)) < 0.1) v = std::copysign(std::abs(w) + 0.2, v);
    return {v, w, uniform(0.1, 4.0)};
  }

  // Commensurate box from integers: dx = 1/denominator, a = m dx, L = n_cells a (+ extra dx).
  FiniteParams box(double v0, double w0, int max_m, int max_len) {
    const double dx = 1.0 / integer(2, 40);
    const int m = integer(1, max_m);
    const int intervals = m * integer(2, max_len) + integer(0, m - 1);
    return {v0, w0, m * dx, intervals * dx, dx};
  }
};

}  // namespace

TEST_CASE("bands are periodic and chirally paired") {
  Gen g(11);
  for (int trial = 0; trial < 20; ++trial) {
    const BulkParams p = g.gapped_bulk();
    for (int i = 0; i < 100; ++i) {
      const double k = g.uniform(-50.0, 50.0);
      const auto e = energy_bands(p, k);
      const auto e2 = energy_bands(p, k + 2 * pi / p.a);
      CHECK(std::abs(e.Eplus - e2.Eplus) <= 1e-12 * std::max(1.0, e.Eplus));
      CHECK(e.Eplus + e.Eminus == 0.0);
      CHECK(e.Eplus >= 0.0);
    }
  }
}

TEST_CASE("gap minimum sits at ka = pi for vw > 0 and at ka = 0 for vw < 0") {
  Gen g(12);
  for (int trial = 0; trial < 50; ++trial) {
    const BulkParams p = g.gapped_bulk();
    if (p.v == 0.0) continue;
    const double expected = std::abs(std::abs(p.v) - std::abs(p.w));
    const double at = p.v * p.w > 0 ? pi / p.a : 0.0;
    CHECK(energy_bands(p, at).Eplus == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
    for (int i = 0; i < 200; ++i) CHECK(energy_bands(p, g.uniform(-pi, pi) / p.a).Eplus >= expected - 1e-12);
  }
}

TEST_CASE("Bloch states are orthonormal eigenvectors") {
  Gen g(13);
  for (int trial = 0; trial < 200; ++trial) {
    const BulkParams p = g.gapped_bulk();
    const double k = g.uniform(-10.0, 10.0);
    const auto up = bloch_state(p, k, Band::plus);
    const auto dn = bloch_state(p, k, Band::minus);
    CHECK(std::norm(up.uA) + std::norm(up.uB) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::norm(dn.uA) + std::norm(dn.uB) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(std::conj(up.uA) * dn.uA + std::conj(up.uB) * dn.uB) < 1e-14);
    const auto h = bloch_matrix(p, k);
    const Eigen::Vector2cd x(up.uA, up.uB);
    CHECK((h * x - energy_bands(p, k).Eplus * x).norm() < 1e-10);
    CHECK(parity_check(p, k) < 1e-12);
    CHECK(std::abs(phase_phi(p, k) - oracle::phi(p.v, p.w, p.a, k)) < 1e-12);
  }
}

TEST_CASE("Wilson loop matches the analytic Zak phase") {
  Gen g(14);
  for (int trial = 0; trial < 30; ++trial) {
    const BulkParams p = g.gapped_bulk();
    const auto z = zak_wilson(p, g.integer(0, 1) ? Band::plus : Band::minus, 512);
    CHECK(std::abs(std::abs(z.value) - zak_analytic(p).value) < 1e-6);
    CHECK(z.classification == zak_analytic(p).classification);
  }
}

TEST_CASE("every truncation meets the exact band at k = 0") {
  Gen g(15);
  for (int trial = 0; trial < 100; ++trial) {
    const BulkParams p = g.gapped_bulk();
    for (ApproxOrder n : {ApproxOrder::zero, ApproxOrder::one, ApproxOrder::two})
      CHECK(approx_bands(p, n, 0.0).Eplus == std::abs(p.v + p.w));
    CHECK(energy_bands(p, 0.0).Eplus == doctest::Approx(std::abs(p.v + p.w)).epsilon(1e-14));
  }
}

TEST_CASE("checked boxes reproduce a and L on the grid") {
  Gen g(16);
  for (int trial = 0; trial < 200; ++trial) {
    const FiniteParams p = g.box(0.5, 1.0, 12, 10);
    const auto c = validate_finite(p);
    CHECK(std::abs(c.shift * p.dx - p.a) <= 1e-12 * p.a);
    CHECK(std::abs((c.points - 1) * p.dx - p.L) <= 1e-12 * p.L);
    const Grid grid = make_grid(c);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(grid.x(i) + grid.x(grid.size() - 1 - i)) <= 1e-12);
  }
}

TEST_CASE("box spectrum equals the union of decoupled chains") {
  Gen g(17);
  for (int trial = 0; trial < 25; ++trial) {
    const FiniteParams p = g.box(g.sign() * g.uniform(0.1, 2.0), g.sign() * g.uniform(0.1, 2.0), 8, 12);
    CAPTURE(p.v0);
    CAPTURE(p.w0);
    CAPTURE(p.a);
    CAPTURE(p.L);
    CAPTURE(p.dx);
    const auto op = build_finite(p);
    const auto s = spectrum(op);
    const auto u = chain_union_spectrum(validate_finite(p));
    CHECK(oracle::max_abs_diff(s.eigenvalues, u) < 1e-9);
    CHECK(pairing_defect(s.eigenvalues) <= 1e-9 * op.norm_bound());
    CHECK(symmetry_residuals(op).chiral == 0.0);
    CHECK(symmetry_residuals(op).parity <= 1e-12 * op.norm_bound());
    if (op.dimension() <= 40) {
      oracle::Dense d = oracle::box_operator(op.points(), op.shift(), p.v0, p.w0);
      CHECK(oracle::max_abs_diff(s.eigenvalues, oracle::jacobi_eigenvalues(d)) < 1e-10);
    }
  }
}

TEST_CASE("topological boxes carry 2m zero modes and respect band edges") {
  Gen g(18);
  for (int trial = 0; trial < 20; ++trial) {
    const double w0 = g.sign() * g.uniform(0.5, 2.0);
    const double ratio = g.uniform(0.1, 0.6);
    const double v0 = g.sign() * ratio * std::abs(w0);
    // splitting ~ ratio^(L/a): choose L/a so it stays below 1e-10 |w0|
    const int cells = static_cast<int>(std::ceil(std::log(1e-12) / std::log(ratio))) + 1;
    const int m = g.integer(1, 6);
    const double dx = 0.05;
    const FiniteParams p{v0, w0, m * dx, m * cells * dx, dx};
    const auto s = spectrum(build_finite(p));
    CHECK(zero_mode_count(s.eigenvalues, 1e-8 * std::abs(w0)) == 2 * static_cast<std::size_t>(m));
    const double lo = std::abs(std::abs(v0) - std::abs(w0)) - 1e-9;
    const double hi = std::abs(v0) + std::abs(w0) + 1e-9;
    for (double e : s.eigenvalues) {
      if (std::abs(e) < 1e-8 * std::abs(w0)) continue;
      CHECK(std::abs(e) >= lo);
      CHECK(std::abs(e) <= hi);
    }
  }
}

TEST_CASE("analytic zero modes are kernel vectors across couplings and labels") {
  Gen g(19);
  for (int trial = 0; trial < 30; ++trial) {
    const double w0 = g.sign() * g.uniform(0.5, 2.0);
    const double ratio = g.uniform(0.2, 0.6);
    const double v0 = g.sign() * ratio * std::abs(w0);
    const int cells = static_cast<int>(std::ceil(std::log(1e-13) / std::log(ratio))) + 1;
    const int m = 2 * g.integer(2, 8);
    const double dx = 0.01;
    const FiniteParams p{v0, w0, m * dx, m * cells * dx, dx};
    const EdgeLabels labels{static_cast<unsigned>(g.integer(1, m / 2 - 1)), g.integer(-3, 3),
                            static_cast<unsigned>(g.integer(1, m / 2 - 1)), g.integer(-3, 3)};
    const auto psi = build_zero_mode(p, labels).spinor();
    CHECK(residual(build_finite(p), psi) < 1e-10);
    const double peakA = std::abs(*std::max_element(psi.psiA.begin(), psi.psiA.end(),
                                                    [](cplx x, cplx y) { return std::abs(x) < std::abs(y); }));
    CHECK(std::abs(psi.psiA.front()) <= 1e-10 * peakA);
    CHECK(std::abs(psi.psiA.back()) <= 1e-10 * peakA);
  }
}

TEST_CASE("phase branches m and m + 2 give the same state") {
  const FiniteParams p{0.5, 1.0, 0.2, 4.0, 0.01};
  for (int m = -2; m <= 2; ++m) {
    const auto a = build_zero_mode(p, {3, m, 4, m}).spinor();
    const auto b = build_zero_mode(p, {3, m + 2, 4, m + 2}).spinor();
    for (std::size_t i = 0; i < a.grid.size(); ++i) {
      CHECK(std::abs(a.psiA[i] - b.psiA[i]) < 1e-14);
      CHECK(std::abs(a.psiB[i] - b.psiB[i]) < 1e-14);
    }
  }
}
