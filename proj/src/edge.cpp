#include "nlssh/edge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace nlssh {

namespace {

constexpr double kPi = std::numbers::pi;

// Integer n mod m for possibly negative n.
long long mod(long long n, long long m) {
  const long long r = n % m;
  return r < 0 ? r + m : r;
}

ZeroModeAnalytic sample_component(const CheckedFinite& checked, Sublattice s, cplx q, unsigned n,
                                  int m) {
  const std::size_t nyquist = checked.shift / 2;
  if (n == 0) throw Error(ErrorCode::DegenerateLabel, "n_s = 0 gives an identically vanishing mode");
  if (n > nyquist)
    throw Error(ErrorCode::LabelAboveNyquist,
                "n_s = " + std::to_string(n) + " exceeds a/(2 dx) = " + std::to_string(nyquist));

  const auto big_m = static_cast<long long>(checked.shift);
  const auto intervals = static_cast<long long>(checked.points - 1);  // L/dx
  if ((2 * static_cast<long long>(n) * intervals) % big_m != 0)
    throw Error(ErrorCode::NonCommensurateBox, "2 n_s L / a is not an integer; the mode cannot vanish at both walls");

  const Grid grid = make_grid(checked);
  ZeroModeAnalytic z;
  z.component = s;
  z.q = q;
  z.n = n;
  z.m = m;
  z.phi = phase_label(n, m, checked.params).phi;
  z.state = SpinorGrid(grid);
  auto& out = z.state.component(s);

  // 2 pi n x_i / a + phi reduces to 2 pi (n i mod M) / M + (2m+1) pi / 2 on the grid,
  // and Im(q) x_i to a multiple of pi / (2M).
  const double quarter = static_cast<double>(mod(2LL * m + 1, 4)) * 0.5 * kPi;
  const double im_step = q.imag() * checked.params.a / kPi;  // -eta or 0
  double peak = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto ii = static_cast<long long>(i);
    const double carrier = std::cos(2.0 * kPi * static_cast<double>(mod(static_cast<long long>(n) * ii, big_m)) /
                                        static_cast<double>(big_m) +
                                    quarter);
    const long long twice = mod(static_cast<long long>(std::llround(im_step)) * (2 * ii - intervals), 4 * big_m);
    const double envelope_phase = kPi * static_cast<double>(twice) / (2.0 * static_cast<double>(big_m));
    out[i] = carrier * std::exp(q.real() * grid.x(i)) * std::polar(1.0, envelope_phase);
    peak = std::max(peak, std::abs(carrier));
  }
  if (peak < 1e-9)
    throw Error(ErrorCode::DegenerateLabel, "harmonic n_s = " + std::to_string(n) + " vanishes on every grid point");

  double norm2 = 0.0;
  for (const auto& c : out) norm2 += std::norm(c);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : out) c *= inv;
  return z;
}

}  // namespace

Exponents exponents(const FiniteParams& params) {
  if (params.v0 == 0.0 || params.w0 == 0.0)
    throw Error(ErrorCode::ZeroCoupling, "v0 and w0 must both be non-zero");
  if (!(params.a > 0.0)) throw Error(ErrorCode::NonPositiveScale, "non-locality scale a must be positive");
  const double decay = std::log(std::abs(params.w0 / params.v0)) / params.a;
  const double osc = params.v0 * params.w0 > 0.0 ? kPi / params.a : 0.0;
  // eta_A = -1, eta_B = +1
  return {cplx(-decay, osc), cplx(decay, -osc)};
}

PhaseLabel phase_label(unsigned n, int m, const FiniteParams& params) {
  PhaseLabel p;
  p.phi = (2.0 * m + 1.0) * 0.5 * kPi + static_cast<double>(n) * kPi * params.L / params.a;
  p.degenerate = n == 0;
  return p;
}

SpinorGrid ZeroModePair::spinor() const {
  SpinorGrid s(A.state.grid);
  s.psiA = A.state.psiA;
  s.psiB = B.state.psiB;
  return s;
}

ZeroModePair build_zero_mode(const FiniteParams& params, const EdgeLabels& labels) {
  const CheckedFinite checked = validate_finite(params);
  const Exponents q = exponents(params);
  return {sample_component(checked, Sublattice::A, q.qA, labels.nA, labels.mA),
          sample_component(checked, Sublattice::B, q.qB, labels.nB, labels.mB)};
}

double residual(const FiniteOperator& op, const SpinorGrid& state) {
  if (state.grid.size() != op.points() || state.grid.step() != op.grid().step())
    throw Error(ErrorCode::GridMismatch, "state and operator live on different grids");
  const double n = state.norm();
  if (n == 0.0) throw Error(ErrorCode::InvalidArgument, "zero state has no residual");
  return op.apply(state).norm() / n;
}

double localization_fit(const SpinorGrid& state, Sublattice component, std::size_t window) {
  if (window == 0) throw Error(ErrorCode::InvalidArgument, "window must be positive");
  const auto& psi = state.component(component);
  std::vector<double> xs;
  std::vector<double> logs;
  for (std::size_t start = 0; start + window <= psi.size(); start += window) {
    std::size_t best = start;
    for (std::size_t i = start; i < start + window; ++i)
      if (std::abs(psi[i]) > std::abs(psi[best])) best = i;
    const double mag = std::abs(psi[best]);
    if (mag > 0.0 && std::isfinite(mag)) {
      xs.push_back(state.grid.x(best));
      logs.push_back(std::log(mag));
    }
  }
  if (xs.size() < 10)
    throw Error(ErrorCode::InsufficientPeaks, "found " + std::to_string(xs.size()) + " envelope maxima, need 10");

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += logs[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (logs[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

AdmissibleLabels count_admissible_labels(const FiniteParams& params) {
  const CheckedFinite checked = validate_finite(params);
  const std::size_t big_m = checked.shift;
  AdmissibleLabels out;
  out.nyquist = big_m / 2;
  out.perComponent = (big_m + 1) / 2 - 1;  // ceil(M/2) - 1
  return out;
}

}  // namespace nlssh
