#include "nlssh/bulk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nlssh/simd/kernels.hpp"

namespace nlssh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGapFloor = 1e-12;
constexpr double kTopologicalTolerance = 1e-3;

// Off-diagonal element v + w e^{-ika}, with sin(ka) snapped to +0 at its zeros.
cplx off_diagonal(const BulkParams& p, double k) {
  const double ka = p.a * k;
  const double re = p.v + p.w * std::cos(ka);
  double im = -p.w * std::sin(ka);
  if (std::abs(im) <= 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(p.v) + std::abs(p.w)))
    im = 0.0;
  return {re, im};
}

double wrap_angle(double x) {
  x = std::remainder(x, 2.0 * kPi);
  return x <= -kPi ? x + 2.0 * kPi : x;
}

}  // namespace

BandPoint energy_bands(const BulkParams& params, double k) {
  const double c = std::cos(params.a * k);
  const double e2 = params.v * params.v + params.w * params.w + 2.0 * params.v * params.w * c;
  const double e = std::sqrt(std::max(0.0, e2));
  return {k, -e, e};
}

std::vector<BandPoint> band_sweep(const BulkParams& params, std::span<const double> ks) {
  std::vector<double> c(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) c[i] = std::cos(params.a * ks[i]);
  std::vector<double> e(ks.size());
  simd::chiral_energy(e, c, params.v, params.w);
  std::vector<BandPoint> out(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) out[i] = {ks[i], -e[i], e[i]};
  return out;
}

double phase_phi(const BulkParams& params, double k) {
  const cplx h = off_diagonal(params, k);
  if (std::abs(h) < kGapFloor)
    throw Error(ErrorCode::GapClosure, "gap closes at k = " + std::to_string(k));
  return std::atan2(h.imag(), h.real());
}

BlochState bloch_state(const BulkParams& params, double k, Band band) {
  const double phi = phase_phi(params, k);
  const double r = 1.0 / std::numbers::sqrt2;
  BlochState s;
  s.k = k;
  s.band = band;
  s.uA = std::polar(r, 0.5 * phi);
  s.uB = std::polar(band == Band::plus ? r : -r, -0.5 * phi);
  return s;
}

Eigen::Matrix2cd bloch_matrix(const BulkParams& params, double k) {
  const cplx h = params.w * std::exp(cplx(0.0, -params.a * k)) + params.v;
  Eigen::Matrix2cd m;
  m << 0.0, h, std::conj(h), 0.0;
  return m;
}

Topology classify_phase(double gamma) noexcept {
  return std::abs(std::abs(wrap_angle(gamma)) - kPi) < kTopologicalTolerance ? Topology::topological
                                                                             : Topology::trivial;
}

ZakResult zak_analytic(const BulkParams& params) {
  validate_bulk(params);
  const double av = std::abs(params.v);
  const double aw = std::abs(params.w);
  if (av == aw) throw Error(ErrorCode::CriticalPoint, "|v| = |w|: gap closes, Zak phase undefined");
  if (av > aw) return {0.0, Topology::trivial, 0};
  return {kPi, Topology::topological, 0};
}

double wilson_loop_phase(std::span<const BlochState> states) {
  cplx prod = 1.0;
  const std::size_t n = states.size();
  for (std::size_t j = 0; j < n; ++j) {
    const BlochState& a = states[j];
    const BlochState& b = states[(j + 1) % n];
    prod *= std::conj(a.uA) * b.uA + std::conj(a.uB) * b.uB;
    const double mag = std::abs(prod);
    if (mag == 0.0) throw Error(ErrorCode::GapClosure, "orthogonal neighbouring states in Wilson loop");
    prod /= mag;
  }
  return wrap_angle(-std::arg(prod));
}

ZakResult zak_wilson(const BulkParams& params, Band band, std::size_t nk) {
  validate_bulk(params);
  if (nk < kMinWilsonPoints)
    throw Error(ErrorCode::InvalidArgument, "Wilson loop needs at least 16 k points");

  const double dk = 2.0 * kPi / (params.a * static_cast<double>(nk));
  const double k0 = -kPi / params.a;
  std::vector<double> ks(nk);
  for (std::size_t j = 0; j < nk; ++j) ks[j] = k0 + static_cast<double>(j) * dk;

  const auto bands = band_sweep(params, ks);
  const double min_gap = std::min_element(bands.begin(), bands.end(), [](const auto& x, const auto& y) {
                           return x.Eplus < y.Eplus;
                         })->Eplus;
  if (min_gap < 1e-8 * std::max(std::abs(params.v), std::abs(params.w)))
    throw Error(ErrorCode::GapClosure, "band gap closes on the sampled Brillouin zone");

  std::vector<BlochState> states;
  states.reserve(nk);
  for (double k : ks) states.push_back(bloch_state(params, k, band));

  const double gamma = wilson_loop_phase(states);
  return {gamma, classify_phase(gamma), nk};
}

double parity_check(const BulkParams& params, double k) {
  Eigen::Matrix2cd sx;
  sx << 0.0, 1.0, 1.0, 0.0;
  return (sx * bloch_matrix(params, -k) * sx - bloch_matrix(params, k)).norm();
}

}  // namespace nlssh
