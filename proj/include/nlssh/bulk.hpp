#pragma once

// Closed-form spectrum, Bloch states and Zak phase of the infinite
// non-local model H(k) = [[0, w e^{-iak} + v], [w e^{iak} + v, 0]].

#include <Eigen/Core>
#include <cstddef>
#include <span>
#include <vector>

#include "nlssh/core.hpp"

namespace nlssh {

struct BandPoint {
  double k = 0.0;
  double Eminus = 0.0;
  double Eplus = 0.0;
};

enum class Topology { trivial, topological };

struct ZakResult {
  double value = 0.0;  // radians, in (-pi, pi]
  Topology classification = Topology::trivial;
  std::size_t kPoints = 0;
};

inline constexpr std::size_t kMinWilsonPoints = 16;

BandPoint energy_bands(const BulkParams& params, double k);

/// Bands at every k in one pass (vectorised over k).
std::vector<BandPoint> band_sweep(const BulkParams& params, std::span<const double> ks);

/// arg(v + w e^{-ika}) on (-pi, pi]; exact zeros of sin(ka) count as +0 so that
/// the branch point ka = pi maps to +pi. Throws GapClosure when |v + w e^{-ika}| < 1e-12.
double phase_phi(const BulkParams& params, double k);

BlochState bloch_state(const BulkParams& params, double k, Band band);

Eigen::Matrix2cd bloch_matrix(const BulkParams& params, double k);

ZakResult zak_analytic(const BulkParams& params);

/// Gauge-invariant Wilson loop over Nk endpoint-excluded points of [-pi/a, pi/a).
ZakResult zak_wilson(const BulkParams& params, Band band, std::size_t nk);

/// -arg prod_j <u_j|u_{j+1}> around the closed loop u_N := u_0, in (-pi, pi].
double wilson_loop_phase(std::span<const BlochState> states);

/// Frobenius norm of sigma_x H(-k) sigma_x - H(k).
double parity_check(const BulkParams& params, double k);

Topology classify_phase(double gamma) noexcept;

}  // namespace nlssh
