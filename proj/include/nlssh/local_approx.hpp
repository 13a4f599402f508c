#pragma once

// Order-n truncations T(a) ~ sum_{j<=n} (a d/dx)^j / j! of the translation
// operator. On a plane wave e^{ikx} the lower-left element of H^(n)(k) is
//   h_n(k) = v + w [1 + iak - (ak)^2/2 ...]   (terms up to order n),
// the upper-right element is its conjugate, and E^(n) = +-|h_n(k)|.

#include <Eigen/Core>
#include <span>
#include <vector>

#include "nlssh/bulk.hpp"
#include "nlssh/core.hpp"

namespace nlssh {

enum class ApproxOrder { zero = 0, one = 1, two = 2 };

/// Throws UnsupportedOrder for anything outside {0, 1, 2}.
ApproxOrder make_order(int n);
inline int to_int(ApproxOrder n) { return static_cast<int>(n); }

cplx truncated_element(const BulkParams& params, ApproxOrder order, double k);
Eigen::Matrix2cd truncated_matrix(const BulkParams& params, ApproxOrder order, double k);

BandPoint approx_bands(const BulkParams& params, ApproxOrder order, double k);
std::vector<BandPoint> approx_band_sweep(const BulkParams& params, ApproxOrder order,
                                         std::span<const double> ks);

/// (1, h_n/E)/sqrt(2), explicitly renormalised. Orders 1 and 2 only.
BlochState approx_eigvec(const BulkParams& params, ApproxOrder order, Band band, double k);

struct BerryIntegralResult {
  double value = 0.0;
  double cutoffK = 0.0;
  double quadratureError = 0.0;
};

inline constexpr double kDefaultBerryCutoff = 1e4;  // in units of 1/a
inline constexpr std::size_t kDefaultBerryPoints = 1 << 16;

/// Integral of i<u|d_k u> over the real k line in the gauge of approx_eigvec:
/// -1/2 times the unwrapped winding of arg h_n on [-K, K], plus the closed-form
/// tails out to the asymptotic directions of h_n.
BerryIntegralResult berry_integral(const BulkParams& params, ApproxOrder order, Band band,
                                   double cutoffK, std::size_t nk = kDefaultBerryPoints);

/// Reference values as published: -pi/2 sgn(a w (v+w)) for n=1, -pi Theta(w) for n=2.
double berry_reference_published(const BulkParams& params, ApproxOrder order);

/// Closed-form winding of h_n: -pi/2 sgn(a w (v+w)) for n=1, -pi Theta(w (v+w)) for n=2.
double berry_reference_winding(const BulkParams& params, ApproxOrder order);

/// Discrete Berry phase along an open path: -sum_j arg <u_j|u_{j+1}>.
double open_path_berry_phase(std::span<const BlochState> states);

struct Fig2Row {
  double ka = 0.0;
  BandPoint order0, order1, order2, exact;
};

/// Bands of every truncation and of the exact model over ka in [-pi, pi], endpoints included.
std::vector<Fig2Row> fig2_table(const BulkParams& params, std::size_t samples);

}  // namespace nlssh
