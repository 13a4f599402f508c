#pragma once

// Parameter and state types shared by every module.

#include <complex>
#include <cstddef>
#include <vector>

#include "nlssh/errors.hpp"

namespace nlssh {

using cplx = std::complex<double>;

/// Couplings (v, w) and non-locality scale a of the infinite model.
struct BulkParams {
  double v = 0.0;
  double w = 0.0;
  double a = 1.0;
};

/// Box couplings, scale, box length and grid step of the finite model.
struct FiniteParams {
  double v0 = 0.0;
  double w0 = 0.0;
  double a = 0.0;
  double L = 0.0;
  double dx = 0.0;
};

/// FiniteParams that passed validation, with the derived integers.
struct CheckedFinite {
  FiniteParams params;
  std::size_t shift = 0;   // m = a/dx
  std::size_t points = 0;  // P = L/dx + 1
};

enum class Band { plus, minus };
enum class Sublattice { A, B };

/// Uniform grid over the closed box [-L/2, L/2].
class Grid {
 public:
  Grid() = default;
  /// P points, step dx, first point at x_0 = -(P-1) dx / 2 + offset.
  Grid(std::size_t points, double dx, double offset = 0.0);

  std::size_t size() const noexcept { return points_; }
  double step() const noexcept { return dx_; }
  double offset() const noexcept { return offset_; }
  double x(std::size_t i) const noexcept;
  std::vector<double> positions() const;
  /// True when x_i = -x_{P-1-i} for every i (zero offset).
  bool symmetric() const noexcept { return offset_ == 0.0; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t points_ = 0;
  double dx_ = 0.0;
  double offset_ = 0.0;
};

/// Two-component complex wavefunction sampled on a grid.
struct SpinorGrid {
  Grid grid;
  std::vector<cplx> psiA;
  std::vector<cplx> psiB;

  explicit SpinorGrid(Grid g = {})
      : grid(g), psiA(g.size()), psiB(g.size()) {}

  double norm() const;
  const std::vector<cplx>& component(Sublattice s) const { return s == Sublattice::A ? psiA : psiB; }
  std::vector<cplx>& component(Sublattice s) { return s == Sublattice::A ? psiA : psiB; }
};

struct BlochState {
  double k = 0.0;
  Band band = Band::plus;
  cplx uA;
  cplx uB;
};

BulkParams validate_bulk(const BulkParams& params);
CheckedFinite validate_finite(const FiniteParams& params);

Grid make_grid(const CheckedFinite& checked);

}  // namespace nlssh
