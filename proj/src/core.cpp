#include "nlssh/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nlssh {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::DegenerateCouplings: return "DegenerateCouplings";
    case ErrorCode::NonCommensurate: return "NonCommensurate";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::DegenerateLabel: return "DegenerateLabel";
    case ErrorCode::LabelAboveNyquist: return "LabelAboveNyquist";
    case ErrorCode::NonCommensurateBox: return "NonCommensurateBox";
    case ErrorCode::ZeroCoupling: return "ZeroCoupling";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::GapClosure: return "GapClosure";
    case ErrorCode::CriticalPoint: return "CriticalPoint";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::InsufficientPeaks: return "InsufficientPeaks";
    case ErrorCode::Serialization: return "Serialization";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  return code <= ErrorCode::Usage;
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

Grid::Grid(std::size_t points, double dx, double offset)
    : points_(points), dx_(dx), offset_(offset) {}

double Grid::x(std::size_t i) const noexcept {
  // integer numerator keeps x_i = -x_{P-1-i} bit-exact
  const double twice = 2.0 * static_cast<double>(i) - static_cast<double>(points_ - 1);
  return 0.5 * twice * dx_ + offset_;
}

std::vector<double> Grid::positions() const {
  std::vector<double> xs(points_);
  for (std::size_t i = 0; i < points_; ++i) xs[i] = x(i);
  return xs;
}

double SpinorGrid::norm() const {
  double s = 0.0;
  for (const auto& z : psiA) s += std::norm(z);
  for (const auto& z : psiB) s += std::norm(z);
  return std::sqrt(s);
}

BulkParams validate_bulk(const BulkParams& params) {
  if (!std::isfinite(params.v) || !std::isfinite(params.w) || !std::isfinite(params.a))
    throw Error(ErrorCode::NonFiniteValue, "bulk parameters must be finite");
  if (params.a <= 0.0)
    throw Error(ErrorCode::NonPositiveScale, "non-locality scale a must be positive");
  if (params.v == 0.0 && params.w == 0.0)
    throw Error(ErrorCode::DegenerateCouplings, "v and w are both zero");
  return params;
}

namespace {

// Returns n if ratio is within 1e-9 (relative) of a positive integer n.
std::size_t integral_ratio(double num, double den, const char* what) {
  const double r = num / den;
  const double n = std::round(r);
  if (n < 1.0 || std::abs(r - n) > 1e-9 * std::max(1.0, std::abs(r)))
    throw Error(ErrorCode::NonCommensurate, std::string(what) + " = " + std::to_string(r) + " is not a positive integer");
  return static_cast<std::size_t>(n);
}

}  // namespace

CheckedFinite validate_finite(const FiniteParams& params) {
  const auto& p = params;
  for (double x : {p.v0, p.w0, p.a, p.L, p.dx})
    if (!std::isfinite(x)) throw Error(ErrorCode::NonFiniteValue, "finite-box parameters must be finite");
  if (p.a <= 0.0) throw Error(ErrorCode::NonPositiveScale, "non-locality scale a must be positive");
  if (p.dx <= 0.0) throw Error(ErrorCode::NonPositiveScale, "grid step dx must be positive");
  if (p.L <= p.a) throw Error(ErrorCode::NonPositiveScale, "box length L must exceed a");
  if (p.v0 == 0.0 && p.w0 == 0.0) throw Error(ErrorCode::DegenerateCouplings, "v0 and w0 are both zero");

  CheckedFinite out;
  out.params = p;
  out.shift = integral_ratio(p.a, p.dx, "a/dx");
  out.points = integral_ratio(p.L, p.dx, "L/dx") + 1;
  return out;
}

Grid make_grid(const CheckedFinite& checked) {
  return Grid(checked.points, checked.params.dx);
}

}  // namespace nlssh
