#include "nlssh/local_approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nlssh/simd/kernels.hpp"

namespace nlssh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxTail = 1e-3;
constexpr double kMaxStep = 0.5 * kPi;

double wrap_angle(double x) {
  x = std::remainder(x, 2.0 * kPi);
  return x <= -kPi ? x + 2.0 * kPi : x;
}

double sign(double x) { return x >= 0.0 ? 1.0 : -1.0; }

void require_dispersive(ApproxOrder order) {
  if (order == ApproxOrder::zero)
    throw Error(ErrorCode::InvalidArgument, "order 0 has flat bands and no k-dependent eigenvector");
}

// Direction of h_n(k) as k -> +inf (sign=+1) or -inf (sign=-1).
double asymptotic_angle(const BulkParams& p, ApproxOrder order, double sign_k) {
  if (order == ApproxOrder::one) return std::arg(cplx(0.0, sign_k * p.a * p.w));
  return std::arg(cplx(-p.w, 0.0));
}

// Unwrapped change of arg h_n across tan-spaced samples on [-K, K].
struct Winding {
  double inner = 0.0;
  double max_step = 0.0;
};

Winding unwrap_winding(const BulkParams& p, ApproxOrder order, double cutoff, double scale,
                       std::size_t nk) {
  const double theta_max = std::atan(cutoff / scale);
  Winding out;
  double prev = 0.0;
  for (std::size_t j = 0; j <= nk; ++j) {
    const double t = -theta_max + 2.0 * theta_max * static_cast<double>(j) / static_cast<double>(nk);
    const double k = j == nk ? cutoff : (j == 0 ? -cutoff : scale * std::tan(t));
    const cplx h = truncated_element(p, order, k);
    const double ang = std::arg(h);
    if (j > 0) {
      const double step = wrap_angle(ang - prev);
      out.inner += step;
      out.max_step = std::max(out.max_step, std::abs(step));
    }
    prev = ang;
  }
  return out;
}

}  // namespace

ApproxOrder make_order(int n) {
  if (n < 0 || n > 2) throw Error(ErrorCode::UnsupportedOrder, "approximation order " + std::to_string(n) + " not in {0,1,2}");
  return static_cast<ApproxOrder>(n);
}

cplx truncated_element(const BulkParams& p, ApproxOrder order, double k) {
  const double ka = p.a * k;
  switch (order) {
    case ApproxOrder::zero: return {p.v + p.w, 0.0};
    case ApproxOrder::one: return {p.v + p.w, p.w * ka};
    case ApproxOrder::two: return {p.v + p.w + (-0.5 * p.w * ka) * ka, p.w * ka};
  }
  return {};
}

Eigen::Matrix2cd truncated_matrix(const BulkParams& params, ApproxOrder order, double k) {
  const cplx h = truncated_element(params, order, k);
  Eigen::Matrix2cd m;
  m << 0.0, std::conj(h), h, 0.0;
  return m;
}

BandPoint approx_bands(const BulkParams& params, ApproxOrder order, double k) {
  const double e = std::abs(truncated_element(params, order, k));
  return {k, -e, e};
}

std::vector<BandPoint> approx_band_sweep(const BulkParams& params, ApproxOrder order,
                                         std::span<const double> ks) {
  std::vector<double> e(ks.size());
  if (order == ApproxOrder::zero) {
    std::fill(e.begin(), e.end(), std::abs(params.v + params.w));
  } else {
    std::vector<double> ka(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) ka[i] = params.a * ks[i];
    simd::truncated_energy(e, ka, params.v, params.w, to_int(order));
  }
  std::vector<BandPoint> out(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) out[i] = {ks[i], -e[i], e[i]};
  return out;
}

BlochState approx_eigvec(const BulkParams& params, ApproxOrder order, Band band, double k) {
  require_dispersive(order);
  const cplx h = truncated_element(params, order, k);
  const double e = std::abs(h);
  if (e < 1e-12 * (std::abs(params.v) + std::abs(params.w)))
    throw Error(ErrorCode::GapClosure, "truncated gap closes at k = " + std::to_string(k));
  const double energy = band == Band::plus ? e : -e;
  BlochState s;
  s.k = k;
  s.band = band;
  s.uA = 1.0;
  s.uB = h / energy;
  const double norm = std::sqrt(std::norm(s.uA) + std::norm(s.uB));
  s.uA /= norm;
  s.uB /= norm;
  return s;
}

BerryIntegralResult berry_integral(const BulkParams& params, ApproxOrder order, Band /*band*/,
                                   double cutoffK, std::size_t nk) {
  validate_bulk(params);
  require_dispersive(order);
  const double a = params.a;
  if (!(cutoffK >= 100.0 / a))
    throw Error(ErrorCode::CutoffTooSmall, "cutoff must be at least 100/a");
  if (nk < 64) throw Error(ErrorCode::InvalidArgument, "need at least 64 quadrature points");

  const double s = std::abs(params.v + params.w);
  const double scale_floor = 1e-6 / a;
  double scale = s / std::abs(a * params.w);
  if (order == ApproxOrder::two) scale = std::min(scale, std::sqrt(2.0 * s / std::abs(params.w)) / a);
  if (!std::isfinite(scale)) scale = 1.0 / a;
  scale = std::clamp(scale, scale_floor, cutoffK);

  // |h_n| is smallest at k = 0 or, for n=2, at the stationary point (ak)^2 = 2 (s w - w^2) / w^2
  const double gap_floor = 1e-12 * (std::abs(params.v) + std::abs(params.w));
  double min_modulus = std::abs(params.v + params.w);
  if (order == ApproxOrder::two && params.w != 0.0) {
    const double t2 = 2.0 * ((params.v + params.w) * params.w - params.w * params.w) / (params.w * params.w);
    if (t2 > 0.0) min_modulus = std::min(min_modulus, std::abs(truncated_element(params, order, std::sqrt(t2) / a)));
  }
  if (min_modulus < gap_floor || params.w == 0.0)
    throw Error(ErrorCode::GapClosure, "truncated spectrum is gapless on the integration range");

  Winding fine = unwrap_winding(params, order, cutoffK, scale, nk);
  for (int refine = 0; fine.max_step > kMaxStep && refine < 8; ++refine) {
    nk *= 2;
    fine = unwrap_winding(params, order, cutoffK, scale, nk);
  }
  if (fine.max_step > kMaxStep)
    throw Error(ErrorCode::ConvergenceFailure, "phase of h_n varies too fast to unwrap");

  const double tail_hi = wrap_angle(asymptotic_angle(params, order, 1.0) -
                                    std::arg(truncated_element(params, order, cutoffK)));
  const double tail_lo = wrap_angle(std::arg(truncated_element(params, order, -cutoffK)) -
                                    asymptotic_angle(params, order, -1.0));
  if (std::abs(tail_hi) > kMaxTail || std::abs(tail_lo) > kMaxTail)
    throw Error(ErrorCode::CutoffTooSmall, "phase tail beyond cutoff exceeds 1e-3 rad");

  const Winding coarse = unwrap_winding(params, order, cutoffK, scale, nk / 2);

  BerryIntegralResult r;
  r.value = -0.5 * (tail_lo + fine.inner + tail_hi);
  r.cutoffK = cutoffK;
  r.quadratureError = 0.5 * std::abs(fine.inner - coarse.inner);
  return r;
}

double berry_reference_published(const BulkParams& p, ApproxOrder order) {
  if (order == ApproxOrder::one) return -0.5 * kPi * sign(p.a * p.w * (p.v + p.w));
  if (order == ApproxOrder::two) return p.w >= 0.0 ? -kPi : 0.0;
  throw Error(ErrorCode::InvalidArgument, "no Berry integral for order 0");
}

double berry_reference_winding(const BulkParams& p, ApproxOrder order) {
  if (order == ApproxOrder::one) return -0.5 * kPi * sign(p.a * p.w * (p.v + p.w));
  if (order == ApproxOrder::two) return p.w * (p.v + p.w) >= 0.0 ? -kPi : 0.0;
  throw Error(ErrorCode::InvalidArgument, "no Berry integral for order 0");
}

double open_path_berry_phase(std::span<const BlochState> states) {
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < states.size(); ++j) {
    const cplx ov = std::conj(states[j].uA) * states[j + 1].uA + std::conj(states[j].uB) * states[j + 1].uB;
    total -= std::arg(ov);
  }
  return total;
}

std::vector<Fig2Row> fig2_table(const BulkParams& params, std::size_t samples) {
  validate_bulk(params);
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  std::vector<double> ks(samples);
  std::vector<double> kas(samples);
  const double denom = static_cast<double>(samples - 1);
  for (std::size_t j = 0; j < samples; ++j) {
    kas[j] = kPi * (2.0 * static_cast<double>(j) - denom) / denom;
    ks[j] = kas[j] / params.a;
  }
  const auto e0 = approx_band_sweep(params, ApproxOrder::zero, ks);
  const auto e1 = approx_band_sweep(params, ApproxOrder::one, ks);
  const auto e2 = approx_band_sweep(params, ApproxOrder::two, ks);
  const auto ex = band_sweep(params, ks);
  std::vector<Fig2Row> rows(samples);
  for (std::size_t j = 0; j < samples; ++j) rows[j] = {kas[j], e0[j], e1[j], e2[j], ex[j]};
  return rows;
}

}  // namespace nlssh
