#include <doctest.h>

#include <Eigen/QR>
#include <cmath>
#include <numbers>

#include "nlssh/edge.hpp"

using namespace nlssh;

namespace {

constexpr double pi = std::numbers::pi;
const FiniteParams fig3{0.5, 1.0, 0.2, 10.0, 0.01};
const EdgeLabels fig4{3, 1, 5, 2};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Usage;
}

double max_abs(const std::vector<cplx>& z) {
  double m = 0.0;
  for (const auto& c : z) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TEST_CASE("exponents") {
  const auto q = exponents(fig3);
  CHECK(q.qB.real() == doctest::Approx(5.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(q.qB.imag() == doctest::Approx(-5.0 * pi).epsilon(1e-14));
  CHECK(q.qA.real() == -q.qB.real());
  CHECK(q.qA.imag() == -q.qB.imag());

  CHECK(exponents({1.0, 1.0, 1.0, 10.0, 0.1}).qA.real() == 0.0);
  CHECK(exponents({2.0, 1.0, 1.0, 10.0, 0.1}).qB.real() == doctest::Approx(-std::log(2.0)));
  CHECK(exponents({-0.5, 1.0, 1.0, 10.0, 0.1}).qB.imag() == 0.0);
  CHECK(code_of([] { exponents({0.0, 1.0, 1.0, 10.0, 0.1}); }) == ErrorCode::ZeroCoupling);
}

TEST_CASE("phase_label") {
  CHECK(phase_label(3, 1, fig3).phi == doctest::Approx(1.5 * pi + 150 * pi).epsilon(1e-14));
  CHECK(phase_label(5, 2, fig3).phi == doctest::Approx(2.5 * pi + 250 * pi).epsilon(1e-14));
  const auto z = phase_label(0, 0, fig3);
  CHECK(z.degenerate);
  CHECK(z.phi == doctest::Approx(pi / 2));
  CHECK(phase_label(3, 3, fig3).phi - phase_label(3, 1, fig3).phi == doctest::Approx(2 * pi));
}

TEST_CASE("Fig. 4 modes solve the box operator") {
  const auto modes = build_zero_mode(fig3, fig4);
  const auto op = build_finite(fig3);
  const auto psi = modes.spinor();
  CHECK(residual(op, psi) < 1e-10);

  SpinorGrid a_only(psi.grid), b_only(psi.grid);
  a_only.psiA = psi.psiA;
  b_only.psiB = psi.psiB;
  CHECK(residual(op, a_only) < 1e-10);
  CHECK(residual(op, b_only) < 1e-10);

  for (Sublattice s : {Sublattice::A, Sublattice::B}) {
    const auto& c = psi.component(s);
    double n2 = 0.0;
    for (const auto& z : c) n2 += std::norm(z);
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));
    const double peak = max_abs(c);
    CHECK(std::abs(c.front()) <= 1e-10 * peak);
    CHECK(std::abs(c.back()) <= 1e-10 * peak);
  }
}

TEST_CASE("recursion identity inside the box") {
  const auto psi = build_zero_mode(fig3, fig4).spinor();
  const std::size_t m = 20;
  const double scale_a = max_abs(psi.psiA), scale_b = max_abs(psi.psiB);
  for (std::size_t i = m; i < psi.grid.size(); ++i) {
    CHECK(std::abs(0.5 * psi.psiB[i] + 1.0 * psi.psiB[i - m]) <= 1e-12 * scale_b);
    CHECK(std::abs(0.5 * psi.psiA[i - m] + 1.0 * psi.psiA[i]) <= 1e-12 * scale_a);
  }
}

TEST_CASE("edge selectivity and localisation slopes") {
  const auto psi = build_zero_mode(fig3, fig4).spinor();
  const std::size_t half = psi.grid.size() / 2;
  double a_left = 0, b_right = 0;
  for (std::size_t i = 0; i < psi.grid.size(); ++i) {
    if (psi.grid.x(i) <= 0.0) a_left += std::norm(psi.psiA[i]);
    if (psi.grid.x(i) >= 0.0) b_right += std::norm(psi.psiB[i]);
  }
  CHECK(a_left > 0.99);
  CHECK(b_right > 0.99);
  CHECK(std::abs(psi.psiA[10]) > std::abs(psi.psiA[half]));

  const double expected = std::log(2.0) / 0.2;
  CHECK(localization_fit(psi, Sublattice::B, 20) == doctest::Approx(expected).epsilon(0.02));
  CHECK(localization_fit(psi, Sublattice::A, 20) == doctest::Approx(-expected).epsilon(0.02));
}

TEST_CASE("critical couplings give flat envelopes") {
  const FiniteParams p{1.0, 1.0, 0.2, 10.0, 0.01};
  const auto psi = build_zero_mode(p, fig4).spinor();
  CHECK(std::abs(localization_fit(psi, Sublattice::B, 20)) < 1e-10);
  CHECK(std::abs(localization_fit(psi, Sublattice::A, 20)) < 1e-10);
}

TEST_CASE("opposite-sign couplings still give kernel vectors") {
  const FiniteParams p{-0.5, 1.0, 0.2, 10.0, 0.01};
  const auto psi = build_zero_mode(p, fig4).spinor();
  CHECK(residual(build_finite(p), psi) < 1e-10);
}

TEST_CASE("label errors") {
  CHECK(code_of([] { build_zero_mode(fig3, {0, 0, 5, 2}); }) == ErrorCode::DegenerateLabel);
  CHECK(code_of([] { build_zero_mode(fig3, {11, 0, 5, 2}); }) == ErrorCode::LabelAboveNyquist);
  // n = M/2 samples sin(pi i) = 0 everywhere.
  CHECK(code_of([] { build_zero_mode(fig3, {10, 0, 5, 2}); }) == ErrorCode::DegenerateLabel);
  // 2 n L / a = 2 * 1 * 1.05 / 0.2 = 10.5
  CHECK(code_of([] { build_zero_mode({0.5, 1.0, 0.2, 1.05, 0.01}, {1, 0, 2, 0}); }) == ErrorCode::NonCommensurateBox);
}

TEST_CASE("residual of generic states and grid mismatch") {
  const auto op = build_finite(fig3);
  SpinorGrid flat(op.grid());
  for (auto& z : flat.psiA) z = 1.0;
  const double r = residual(op, flat);
  CHECK(r > 0.1);
  CHECK(r <= op.norm_bound());
  CHECK(code_of([&] { residual(op, SpinorGrid(Grid(11, 0.01))); }) == ErrorCode::GridMismatch);
}

TEST_CASE("analytic modes lie in the numerical midgap eigenspace") {
  const auto op = build_finite(fig3);
  const auto s = spectrum(op, true);
  std::vector<const SpinorGrid*> mid;
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k)
    if (std::abs(s.eigenvalues[k]) < 1e-8) mid.push_back(&s.vectors[k]);
  REQUIRE(mid.size() == 40);

  const auto n = static_cast<Eigen::Index>(op.dimension());
  Eigen::MatrixXd basis(n, static_cast<Eigen::Index>(mid.size()));
  for (std::size_t c = 0; c < mid.size(); ++c)
    for (std::size_t i = 0; i < op.points(); ++i) {
      basis(op.index(i, Sublattice::A), c) = mid[c]->psiA[i].real();
      basis(op.index(i, Sublattice::B), c) = mid[c]->psiB[i].real();
    }
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(basis).householderQ() *
                            Eigen::MatrixXd::Identity(n, basis.cols());

  const auto psi = build_zero_mode(fig3, fig4).spinor();
  for (Sublattice s_ : {Sublattice::A, Sublattice::B}) {
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
    const auto& comp = psi.component(s_);
    for (std::size_t i = 0; i < op.points(); ++i) x(op.index(i, s_)) = comp[i];
    const Eigen::VectorXcd proj = q.cast<cplx>() * (q.transpose().cast<cplx>() * x);
    CHECK((x - proj).norm() < 1e-6);
  }
}

TEST_CASE("count_admissible_labels") {
  const auto c = count_admissible_labels(fig3);
  CHECK(c.nyquist == 10);
  CHECK(c.perComponent == 9);
  CHECK(count_admissible_labels({0.5, 1.0, 0.2, 10.0, 0.001}).perComponent == 99);
  CHECK(count_admissible_labels({0.5, 1.0, 0.2, 10.0, 0.0001}).perComponent == 999);
}

TEST_CASE("admissible label count matches brute-force enumeration") {
  const FiniteParams p{0.5, 1.0, 0.2, 2.0, 0.01};
  std::vector<std::vector<cplx>> distinct;
  for (unsigned n = 1; n <= 10; ++n) {
    for (int m = 0; m < 2; ++m) {
      std::vector<cplx> b;
      try {
        b = build_zero_mode(p, {1, 0, n, m}).B.state.psiB;
      } catch (const Error&) {
        continue;
      }
      bool known = false;
      for (const auto& d : distinct) {
        cplx ov = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) ov += std::conj(d[i]) * b[i];
        if (std::abs(std::abs(ov) - 1.0) < 1e-9) known = true;
      }
      if (!known) distinct.push_back(b);
    }
  }
  CHECK(distinct.size() == count_admissible_labels(p).perComponent);
}

TEST_CASE("numerical midgap eigenvectors have small residual") {
  const auto op = build_finite(fig3);
  const auto s = spectrum(op, true);
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k)
    if (std::abs(s.eigenvalues[k]) < 1e-8) CHECK(residual(op, s.vectors[k]) < 1e-9 * op.norm_bound());
}
