#pragma once

// Zero-energy edge states of the finite box. At E = 0 the two component
// equations decouple into v0 psi_A(x) + w0 psi_A(x+a) = 0 and
// v0 psi_B(x) + w0 psi_B(x-a) = 0, solved by
//   psi_s(x) = cos(2 pi n_s x / a + phi_{n_s}) exp(q_s x),
// with the phase fixed by psi_s(+-L/2) = 0.

#include <cstddef>
#include <vector>

#include "nlssh/core.hpp"
#include "nlssh/finite.hpp"

namespace nlssh {

struct EdgeLabels {
  unsigned nA = 1;
  int mA = 0;
  unsigned nB = 1;
  int mB = 0;

  friend bool operator==(const EdgeLabels&, const EdgeLabels&) = default;
};

struct Exponents {
  cplx qA;
  cplx qB;
};

/// q_s = eta_s ln|w0/v0| / a - i eta_s pi / a, eta_A = -1, eta_B = +1.
/// The imaginary part is dropped when v0 and w0 have opposite signs.
Exponents exponents(const FiniteParams& params);

struct PhaseLabel {
  double phi = 0.0;
  bool degenerate = false;  // n = 0: the cosine vanishes identically
};

/// phi = (2m + 1) pi / 2 + n pi L / a.
PhaseLabel phase_label(unsigned n, int m, const FiniteParams& params);

struct ZeroModeAnalytic {
  Sublattice component = Sublattice::A;
  cplx q;
  unsigned n = 0;
  int m = 0;
  double phi = 0.0;
  SpinorGrid state;  // only `component` is populated, unit l2 norm
};

struct ZeroModePair {
  ZeroModeAnalytic A;
  ZeroModeAnalytic B;

  /// (psi_A, psi_B) with each component separately normalised.
  SpinorGrid spinor() const;
};

ZeroModePair build_zero_mode(const FiniteParams& params, const EdgeLabels& labels);

/// ||H psi|| / ||psi||.
double residual(const FiniteOperator& op, const SpinorGrid& state);

/// Least-squares slope of log(window maxima of |psi_s|) against x, windows of
/// `window` consecutive grid points (use a/dx). Needs >= 10 non-zero maxima.
double localization_fit(const SpinorGrid& state, Sublattice component, std::size_t window);

struct AdmissibleLabels {
  std::size_t perComponent = 0;  // distinct non-vanishing grid states, up to sign
  std::size_t nyquist = 0;       // floor(a / (2 dx))
};

/// On the grid, harmonic n samples as -+sin(2 pi n i / M) e^{q x_i} (M = a/dx): n and
/// M - n coincide up to sign, n = M/2 vanishes, and m_s only flips the sign.
AdmissibleLabels count_admissible_labels(const FiniteParams& params);

}  // namespace nlssh
