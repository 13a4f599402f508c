#include "nlssh/finite.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "nlssh/io.hpp"
#include "nlssh/parallel.hpp"
#include "nlssh/simd/kernels.hpp"

namespace nlssh {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kVectorResidual = 1e-10;

void sort_by_eigenvalue(SpectrumResult& r) {
  std::vector<std::size_t> order(r.eigenvalues.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return r.eigenvalues[i] < r.eigenvalues[j]; });
  std::vector<double> values(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) values[i] = r.eigenvalues[order[i]];
  r.eigenvalues = std::move(values);
  if (!r.vectors.empty()) {
    std::vector<SpinorGrid> vecs;
    vecs.reserve(order.size());
    for (std::size_t i : order) vecs.push_back(std::move(r.vectors[i]));
    r.vectors = std::move(vecs);
  }
}

SpinorGrid to_spinor(const Grid& grid, const Eigen::Ref<const Eigen::VectorXd>& a,
                     const Eigen::Ref<const Eigen::VectorXd>& b) {
  SpinorGrid s(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s.psiA[i] = a(static_cast<Eigen::Index>(i));
    s.psiB[i] = b(static_cast<Eigen::Index>(i));
  }
  return s;
}

double max_eigen_residual(const FiniteOperator& op, const SpectrumResult& r) {
  double worst = 0.0;
  for (std::size_t k = 0; k < r.vectors.size(); ++k) {
    SpinorGrid hx = op.apply(r.vectors[k]);
    for (std::size_t i = 0; i < op.points(); ++i) {
      hx.psiA[i] -= r.eigenvalues[k] * r.vectors[k].psiA[i];
      hx.psiB[i] -= r.eigenvalues[k] * r.vectors[k].psiB[i];
    }
    worst = std::max(worst, hx.norm() / r.vectors[k].norm());
  }
  return worst;
}

template <typename Svd>
double triplet_residual(const Eigen::MatrixXd& c, const Svd& svd) {
  // Residual of the singular triplets bounds the residual of (u, +-v)/sqrt2.
  const auto& sigma = svd.singularValues();
  const Eigen::MatrixXd r1 = c * svd.matrixV() - svd.matrixU() * sigma.asDiagonal();
  const Eigen::MatrixXd r2 = c.transpose() * svd.matrixU() - svd.matrixV() * sigma.asDiagonal();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k)
    worst = std::max(worst, std::sqrt(0.5 * (r1.col(k).squaredNorm() + r2.col(k).squaredNorm())));
  return worst;
}

template <typename Svd>
SpectrumResult from_svd(const FiniteOperator& op, const Svd& svd, bool wantVectors, double residual) {
  const auto& sigma = svd.singularValues();
  SpectrumResult r;
  r.method = EigenMethod::block_svd;
  r.residualBound = residual;
  const auto n = static_cast<std::size_t>(sigma.size());
  r.eigenvalues.reserve(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto ki = static_cast<Eigen::Index>(k);
    r.eigenvalues.push_back(sigma(ki));
    r.eigenvalues.push_back(-sigma(ki));
    if (wantVectors) {
      const double s = 1.0 / std::sqrt(2.0);
      r.vectors.push_back(to_spinor(op.grid(), s * svd.matrixU().col(ki), s * svd.matrixV().col(ki)));
      r.vectors.push_back(to_spinor(op.grid(), s * svd.matrixU().col(ki), -s * svd.matrixV().col(ki)));
    }
  }
  sort_by_eigenvalue(r);
  return r;
}

SpectrumResult block_svd_spectrum(const FiniteOperator& op, bool wantVectors) {
  const Eigen::MatrixXd c = op.coupling_block();
  if (!wantVectors) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(c);
    if (svd.info() != Eigen::Success)
      throw Error(ErrorCode::ConvergenceFailure, "SVD of the coupling block did not converge");
    return from_svd(op, svd, false, static_cast<double>(op.dimension()) * kEps * op.norm_bound());
  }
  Eigen::BDCSVD<Eigen::MatrixXd> fast(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (fast.info() == Eigen::Success) {
    const double res = triplet_residual(c, fast);
    if (res <= kVectorResidual * std::max(op.norm_bound(), 1.0)) return from_svd(op, fast, true, res);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceFailure, "SVD of the coupling block did not converge");
  return from_svd(op, svd, true, triplet_residual(c, svd));
}

SpectrumResult dense_spectrum(const FiniteOperator& op, bool wantVectors) {
  const Eigen::MatrixXd h = op.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      h, wantVectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceFailure, "symmetric eigensolver did not converge");

  SpectrumResult r;
  r.method = EigenMethod::full_dense;
  const auto& ev = es.eigenvalues();
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  const auto p = static_cast<Eigen::Index>(op.points());
  if (wantVectors) {
    const Eigen::MatrixXd& z = es.eigenvectors();
    for (Eigen::Index k = 0; k < z.cols(); ++k)
      r.vectors.push_back(to_spinor(op.grid(), z.col(k).head(p), z.col(k).tail(p)));
    r.residualBound = max_eigen_residual(op, r);
  } else {
    r.residualBound = static_cast<double>(op.dimension()) * kEps * op.norm_bound();
  }
  return r;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_chain(const SshChain& chain, bool wantVectors) {
  const auto n = static_cast<Eigen::Index>(2 * chain.nCells);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (Eigen::Index j = 0; j + 1 < n; ++j) sub(j) = (j % 2 == 0) ? chain.v : chain.w;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, wantVectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceFailure, "tridiagonal eigensolver did not converge");
  return es;
}

SpectrumResult chain_spectrum_on_grid(const FiniteOperator& op, const CheckedFinite& checked,
                                      bool wantVectors) {
  const auto chains = chain_decomposition(checked);
  std::vector<SpectrumResult> parts(chains.size());
  parallel_for(chains.size(), [&](std::size_t c) {
    const auto es = solve_chain(chains[c], wantVectors);
    SpectrumResult& part = parts[c];
    const auto& ev = es.eigenvalues();
    part.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    if (!wantVectors) return;
    const Eigen::MatrixXd& z = es.eigenvectors();
    for (Eigen::Index k = 0; k < z.cols(); ++k) {
      SpinorGrid s(op.grid());
      for (std::size_t cell = 0; cell < chains[c].nCells; ++cell) {
        const std::size_t i = chains[c].offset + cell * checked.shift;
        s.psiA[i] = z(static_cast<Eigen::Index>(2 * cell), k);
        s.psiB[i] = z(static_cast<Eigen::Index>(2 * cell + 1), k);
      }
      part.vectors.push_back(std::move(s));
    }
  });

  SpectrumResult r;
  r.method = EigenMethod::chains;
  for (auto& part : parts) {
    r.eigenvalues.insert(r.eigenvalues.end(), part.eigenvalues.begin(), part.eigenvalues.end());
    for (auto& v : part.vectors) r.vectors.push_back(std::move(v));
  }
  sort_by_eigenvalue(r);
  r.residualBound = wantVectors ? max_eigen_residual(op, r)
                                : static_cast<double>(op.dimension()) * kEps * op.norm_bound();
  return r;
}

}  // namespace

FiniteOperator::FiniteOperator(const CheckedFinite& checked, const Grid& grid)
    : points_(checked.points),
      shift_(checked.shift),
      v0_(checked.params.v0),
      w0_(checked.params.w0),
      grid_(grid),
      matrix_(static_cast<Eigen::Index>(2 * checked.points), static_cast<Eigen::Index>(2 * checked.points)) {
  if (grid.size() != points_) throw Error(ErrorCode::GridMismatch, "grid size differs from L/dx + 1");
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(4 * points_);
  auto add = [&](std::size_t r, std::size_t c, double value) {
    if (value == 0.0) return;
    entries.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c), value);
    entries.emplace_back(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(r), value);
  };
  for (std::size_t i = 0; i < points_; ++i) {
    add(index(i, Sublattice::A), index(i, Sublattice::B), v0_);
    if (i >= shift_) add(index(i, Sublattice::A), index(i - shift_, Sublattice::B), w0_);
  }
  matrix_.setFromTriplets(entries.begin(), entries.end());
}

Eigen::MatrixXd FiniteOperator::coupling_block() const {
  const auto p = static_cast<Eigen::Index>(points_);
  return Eigen::MatrixXd(matrix_).topRightCorner(p, p);
}

Eigen::MatrixXd FiniteOperator::dense() const { return Eigen::MatrixXd(matrix_); }

double FiniteOperator::norm_bound() const noexcept { return std::abs(v0_) + std::abs(w0_); }

SpinorGrid FiniteOperator::apply(const SpinorGrid& psi) const {
  if (psi.grid.size() != points_ || psi.psiA.size() != points_ || psi.psiB.size() != points_)
    throw Error(ErrorCode::GridMismatch, "state and operator live on different grids");
  SpinorGrid out(grid_);
  // complex arrays viewed as interleaved (re, im) doubles
  const std::size_t n = 2 * points_;
  const auto s = static_cast<std::ptrdiff_t>(2 * shift_);
  auto as_doubles = [n](const std::vector<cplx>& z) {
    return std::span<const double>(reinterpret_cast<const double*>(z.data()), n);
  };
  auto as_out = [n](std::vector<cplx>& z) { return std::span<double>(reinterpret_cast<double*>(z.data()), n); };
  simd::shift_axpby(as_out(out.psiA), as_doubles(psi.psiB), v0_, w0_, -s);
  simd::shift_axpby(as_out(out.psiB), as_doubles(psi.psiA), v0_, w0_, s);
  return out;
}

FiniteOperator build_finite(const CheckedFinite& checked, const Grid& grid) {
  return FiniteOperator(checked, grid);
}

FiniteOperator build_finite(const FiniteParams& params) {
  const CheckedFinite checked = validate_finite(params);
  return FiniteOperator(checked, make_grid(checked));
}

SpectrumResult spectrum(const FiniteOperator& op, bool wantVectors, EigenMethod method) {
  SpectrumResult r;
  switch (method) {
    case EigenMethod::block_svd: r = block_svd_spectrum(op, wantVectors); break;
    case EigenMethod::full_dense: r = dense_spectrum(op, wantVectors); break;
    case EigenMethod::chains: {
      CheckedFinite checked;
      checked.params = {op.v0(), op.w0(), 0.0, 0.0, op.grid().step()};
      checked.shift = op.shift();
      checked.points = op.points();
      r = chain_spectrum_on_grid(op, checked, wantVectors);
      break;
    }
  }
  if (r.residualBound > kVectorResidual * std::max(op.norm_bound(), 1.0))
    throw Error(ErrorCode::ConvergenceFailure,
                "eigen-residual " + io::format_double(r.residualBound) + " exceeds 1e-10 ||H||");
  return r;
}

std::vector<SshChain> chain_decomposition(const CheckedFinite& checked) {
  const std::size_t m = checked.shift;
  const std::size_t p = checked.points;
  std::vector<SshChain> chains;
  for (std::size_t r = 0; r < std::min(m, p); ++r) {
    SshChain c;
    c.nCells = (p - r + m - 1) / m;
    c.v = checked.params.v0;
    c.w = checked.params.w0;
    c.offset = r;
    chains.push_back(c);
  }
  return chains;
}

SpectrumResult ssh_spectrum(const SshChain& chain) {
  if (chain.nCells < 1) throw Error(ErrorCode::InvalidArgument, "chain needs at least one cell");
  const auto es = solve_chain(chain, false);
  SpectrumResult r;
  r.method = EigenMethod::chains;
  const auto& ev = es.eigenvalues();
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end());
  r.residualBound = static_cast<double>(2 * chain.nCells) * kEps * (std::abs(chain.v) + std::abs(chain.w));
  return r;
}

std::vector<double> chain_union_spectrum(const CheckedFinite& checked) {
  const auto chains = chain_decomposition(checked);
  std::vector<std::vector<double>> parts(chains.size());
  parallel_for(chains.size(), [&](std::size_t c) { parts[c] = ssh_spectrum(chains[c]).eigenvalues; });
  std::vector<double> all;
  for (const auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  std::sort(all.begin(), all.end());
  return all;
}

std::size_t zero_mode_count(std::span<const double> eigenvalues, double tol) {
  return static_cast<std::size_t>(
      std::count_if(eigenvalues.begin(), eigenvalues.end(), [tol](double e) { return std::abs(e) < tol; }));
}

double pairing_defect(std::span<const double> sorted) {
  double worst = 0.0;
  const std::size_t n = sorted.size();
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(sorted[i] + sorted[n - 1 - i]));
  return worst;
}

SymmetryResiduals symmetry_residuals(const FiniteOperator& op) {
  SymmetryResiduals out;
  const auto& h = op.matrix();
  const auto p = static_cast<Eigen::Index>(op.points());

  double chiral = 0.0;
  for (Eigen::Index col = 0; col < h.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(h, col); it; ++it)
      if ((it.row() < p) == (it.col() < p)) chiral += 4.0 * it.value() * it.value();
  out.chiral = std::sqrt(chiral);

  // X pairs (i, A) with (j, B) where x_j = -x_i; points without a mirror partner get an empty row.
  const Grid& g = op.grid();
  const double tol = 1e-9 * g.step();
  std::vector<Eigen::Triplet<double>> xs;
  for (std::size_t i = 0; i < op.points(); ++i) {
    const double target = -g.x(i);
    const double jf = std::round((target - g.x(0)) / g.step());
    if (jf < 0.0 || jf > static_cast<double>(op.points() - 1)) continue;
    const auto j = static_cast<std::size_t>(jf);
    if (std::abs(g.x(j) - target) > tol) continue;
    xs.emplace_back(static_cast<Eigen::Index>(op.index(i, Sublattice::A)),
                    static_cast<Eigen::Index>(op.index(j, Sublattice::B)), 1.0);
    xs.emplace_back(static_cast<Eigen::Index>(op.index(j, Sublattice::B)),
                    static_cast<Eigen::Index>(op.index(i, Sublattice::A)), 1.0);
  }
  Eigen::SparseMatrix<double> x(h.rows(), h.cols());
  x.setFromTriplets(xs.begin(), xs.end());
  const Eigen::SparseMatrix<double> comm = h * x - x * h;
  out.parity = comm.norm();
  return out;
}

double kolmogorov_distance(std::span<const double> a, std::span<const double> b, double resolution) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "empty sample");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  auto cdf = [](const std::vector<double>& s, double t) {
    return static_cast<double>(std::upper_bound(s.begin(), s.end(), t) - s.begin()) / static_cast<double>(s.size());
  };
  double d = 0.0;
  for (double t : sb) d = std::max(d, cdf(sb, t) - cdf(sa, t + resolution));
  for (double t : sa) d = std::max(d, cdf(sa, t) - cdf(sb, t + resolution));
  return d;
}

Fig3Comparison fig3_compare(const FiniteParams& params, double tolZero) {
  const CheckedFinite checked = validate_finite(params);
  const FiniteOperator op(checked, make_grid(checked));
  Fig3Comparison out;
  out.finite = spectrum(op).eigenvalues;
  SshChain chain;
  chain.nCells = checked.points;
  chain.v = params.v0;
  chain.w = params.w0;
  out.ssh = ssh_spectrum(chain).eigenvalues;
  const double tol = tolZero * std::abs(params.w0);
  out.zeroFinite = zero_mode_count(out.finite, tol);
  out.zeroSsh = zero_mode_count(out.ssh, tol);
  out.kolmogorov = kolmogorov_distance(out.finite, out.ssh, 1e-9 * op.norm_bound());
  return out;
}

}  // namespace nlssh
