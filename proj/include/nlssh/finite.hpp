#pragma once

// Finite non-local model on the closed box [-L/2, L/2]. Couplings vanish
// outside the box, so on a grid with a = m dx the eigenproblem
//   w0 psi_B(x-a) + v0 psi_B(x) = E psi_A(x)
//   w0 psi_A(x+a) + v0 psi_A(x) = E psi_B(x)
// becomes a 2P x 2P real symmetric matrix [[0, C], [C^T, 0]] (A block first)
// whose w0 terms are dropped wherever x -+ a leaves the grid.

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstddef>
#include <span>
#include <vector>

#include "nlssh/core.hpp"

namespace nlssh {

class FiniteOperator {
 public:
  FiniteOperator(const CheckedFinite& checked, const Grid& grid);

  std::size_t dimension() const noexcept { return 2 * points_; }
  std::size_t points() const noexcept { return points_; }
  std::size_t shift() const noexcept { return shift_; }
  double v0() const noexcept { return v0_; }
  double w0() const noexcept { return w0_; }
  const Grid& grid() const noexcept { return grid_; }

  /// Basis index of (grid point, sublattice): A_i -> i, B_i -> P + i.
  std::size_t index(std::size_t i, Sublattice s) const noexcept {
    return s == Sublattice::A ? i : points_ + i;
  }

  const Eigen::SparseMatrix<double>& matrix() const noexcept { return matrix_; }
  /// The P x P block C with (H psi)_A = C psi_B.
  Eigen::MatrixXd coupling_block() const;
  Eigen::MatrixXd dense() const;

  /// Upper bound |v0| + |w0| on the spectral norm.
  double norm_bound() const noexcept;

  /// H psi via the shift stencil; agrees with matrix() * psi.
  SpinorGrid apply(const SpinorGrid& psi) const;

 private:
  std::size_t points_;
  std::size_t shift_;
  double v0_;
  double w0_;
  Grid grid_;
  Eigen::SparseMatrix<double> matrix_;
};

FiniteOperator build_finite(const FiniteParams& params);
FiniteOperator build_finite(const CheckedFinite& checked, const Grid& grid);

enum class EigenMethod { block_svd, full_dense, chains };

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<SpinorGrid> vectors;  // matches eigenvalues when requested
  double residualBound = 0.0;       // max ||H x - lambda x|| (or eps-based estimate without vectors)
  EigenMethod method = EigenMethod::block_svd;
};

/// Full spectrum. The default block-SVD route pairs +-sigma exactly.
SpectrumResult spectrum(const FiniteOperator& op, bool wantVectors = false,
                        EigenMethod method = EigenMethod::block_svd);

/// Open discrete SSH chain A_0 -v- B_0 -w- A_1 -v- B_1 ... with nCells cells.
struct SshChain {
  std::size_t nCells = 1;
  double v = 0.0;
  double w = 0.0;
  std::size_t offset = 0;  // first grid index of the residue class it came from
};

/// Splits the grid into residue classes modulo m; each class is an independent open chain.
std::vector<SshChain> chain_decomposition(const CheckedFinite& checked);

SpectrumResult ssh_spectrum(const SshChain& chain);

/// Multiset union of the chain spectra, sorted; chains diagonalised in parallel.
std::vector<double> chain_union_spectrum(const CheckedFinite& checked);

std::size_t zero_mode_count(std::span<const double> eigenvalues, double tol);

/// max_i |lambda_i + lambda_{n-1-i}| over an ascending spectrum.
double pairing_defect(std::span<const double> sorted_eigenvalues);

struct SymmetryResiduals {
  double chiral = 0.0;  // ||{H, Sigma_z}||_F
  double parity = 0.0;  // ||[H, X]||_F, X: (i, A) <-> (mirror(i), B)
};

SymmetryResiduals symmetry_residuals(const FiniteOperator& op);

/// sup_t max(F_b(t) - F_a(t + resolution), F_a(t) - F_b(t + resolution)) between
/// empirical CDFs; resolution = 0 gives the plain two-sample Kolmogorov distance.
double kolmogorov_distance(std::span<const double> a, std::span<const double> b,
                           double resolution = 0.0);

struct Fig3Comparison {
  std::vector<double> finite;  // spectrum of the discretised non-local box
  std::vector<double> ssh;     // open chain with P cells (N = 2P sites)
  double kolmogorov = 0.0;
  std::size_t zeroFinite = 0;
  std::size_t zeroSsh = 0;
};

/// tolZero is relative to |w0|.
Fig3Comparison fig3_compare(const FiniteParams& params, double tolZero = 1e-8);

}  // namespace nlssh
