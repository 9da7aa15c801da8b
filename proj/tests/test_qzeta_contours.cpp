#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qzeta/classical.hpp"
#include "qzeta/qzeta_contours.hpp"
#include "qzeta/qzeta_series.hpp"

using namespace qzeta;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("imaginary Gaussian integral equals the product") {
  const QParams p = QParams::from_a(3.0);
  const Complex k{0.9, 0.0};
  const Complex quad = imaginary_integral(k, KernelSpec::gauss_pos(1.0), p, 1e-10).value;
  const Complex prod = std::sqrt(p.a * kPi) *
                       std::exp(qpoch_log(k, p).log_value - qpoch_log(2.0 * k, p).log_value);
  CHECK(std::abs(quad - prod) < 1e-8 * std::abs(prod));
}

TEST_CASE("imaginary integral requires Re k > 0 and rejects divergent kernels") {
  const QParams p = QParams::from_a(2.0);
  CHECK_THROWS_AS(imaginary_integral({-0.1, 0.0}, KernelSpec::plus(1.0), p), DomainError);
  CHECK_THROWS_AS(imaginary_integral({0.5, 0.0}, KernelSpec::gauss_neg(1.0), p), DomainError);
}

TEST_CASE("imaginary minus evaluator approaches Z(k) for large a") {
  const Complex k{2.0, 0.0};
  const QParams p = QParams::from_a(10000.0);
  const Complex v = std::pow(Complex{p.a / 4.0, 0.0}, k - 0.5) *
                    imaginary_integral(k, KernelSpec::minus(1.0), p, 1e-9).value;
  const Complex target = classical_Z(k, ZVariant::minus).value;
  CHECK(std::abs(v - target) < 1e-3 * std::abs(target));
}

TEST_CASE("imaginary evaluators: 2 pi a i periodicity, reality, conjugation") {
  const QParams p = QParams::from_a(2.0);
  for (auto kernel : {KernelSpec::minus(1.0), KernelSpec::plus(2.0), KernelSpec::gauss_pos(1.0),
                      KernelSpec::theta(1.0), KernelSpec::dirichlet3(2.0)}) {
    const Complex k{0.8, 0.5};
    const Complex v = imaginary_integral(k, kernel, p, 1e-10).value;
    const Complex vper =
        imaginary_integral(k + Complex{0.0, 2.0 * kPi * p.a}, kernel, p, 1e-10).value;
    CHECK(std::abs(v - vper) < 1e-9 * std::abs(v));
    const Complex vconj = imaginary_integral(std::conj(k), kernel, p, 1e-10).value;
    CHECK(std::abs(vconj - std::conj(v)) < 1e-8 * std::abs(v));
    const Complex vr = imaginary_integral({0.8, 0.0}, kernel, p, 1e-10).value;
    CHECK(std::abs(vr.imag()) < 1e-10 * std::abs(vr));
  }
}

TEST_CASE("large Re k: plus evaluator tends to the psi_+ constant") {
  const QParams p = QParams::from_a(1.0);
  const Complex v20 = imaginary_integral({20.0, 0.0}, KernelSpec::plus(1.0), p, 1e-11).value;
  const Complex v30 = imaginary_integral({30.0, 0.0}, KernelSpec::plus(1.0), p, 1e-11).value;
  CHECK(std::abs(v20 - v30) < 1e-8);
  CHECK(v30.real() > 0.0);
}

TEST_CASE("beta-renormalized minus evaluator: stable-limit trend") {
  const Complex k{1.2, 0.0};
  const Complex target = std::sqrt(kPi) * std::exp(log_gamma(k + 1.0)) *
                         complex_zeta(k + 0.5).value;
  double prev = 1e300;
  for (double a : {250.0, 500.0, 1000.0}) {
    const QParams p = QParams::from_a(a);
    const EvalResult base = imaginary_integral(k, KernelSpec::minus(1.0), p, 1e-10);
    const Complex v = std::pow(Complex{p.a, 0.0}, k - 0.5) *
                      renormalized_eval(base, NormalizerKind::beta, k, p).value;
    const double err = std::abs(v - target);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("real contour: Z+ equals Z- above the strip") {
  const QParams p = QParams::from_a(1.0);
  const Complex k{0.5, 6.0};
  const double eps = 0.1;
  const Complex zp =
      real_contour_eval(k, RealContourWhich::Zplus_path, KernelSpec::minus(1.0), eps, p, 1e-10)
          .value;
  const Complex zm =
      real_contour_eval(k, RealContourWhich::Zminus_path, KernelSpec::minus(1.0), eps, p, 1e-10)
          .value;
  CHECK(std::abs(zp - zm) < 1e-9 * std::max(1.0, std::abs(zp)));
}

TEST_CASE("real contour: sharp combination equals the residue series") {
  const QParams p = QParams::from_a(3.0);
  const Complex k{0.8, 0.0};
  const Complex quad = real_contour_eval(k, RealContourWhich::sharp_combination,
                                         KernelSpec::minus(1.0), 0.2, p, 1e-9)
                           .value;
  const Complex series = sharp_series(k, KernelSpec::minus(1.0), p).value;
  CHECK(std::abs(quad - series) < 1e-7 * std::abs(series));
}

TEST_CASE("real contour: re combination approaches cos(pi k) Z(k)") {
  const Complex k{1.3, 0.0};
  const Complex target = std::cos(kPi * k) * classical_Z(k, ZVariant::minus).value;
  double prev = 1e300;
  for (double a : {100.0, 1000.0}) {
    const QParams p = QParams::from_a(a);
    const Complex v = std::pow(Complex{p.a / 4.0, 0.0}, k - 0.5) *
                      real_contour_eval(k, RealContourWhich::re_combination,
                                        KernelSpec::minus(1.0), 0.2, p, 1e-9)
                          .value;
    const double err = std::abs(v - target);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("flat continuation agrees with the direct integral on the overlap") {
  const QParams p = QParams::from_a(4.0);
  const KernelSpec plus = KernelSpec::plus(2.0);
  const Complex k{0.1, 0.0};
  const Complex direct = imaginary_integral(k, plus, p, 1e-11).value;
  const Complex flat = flat_continuation(k, plus, p, 1e-11).value;
  CHECK(std::abs(direct - flat) < 1e-8 * std::abs(direct));
}

TEST_CASE("flat continuation: the m-sum audit and the pi*a*i pole") {
  const QParams p = QParams::from_a(4.0);
  const KernelSpec plus = KernelSpec::plus(2.0);
  // m = +-1 weight contributions are negligible against m = 0 at a = 4
  const Complex k{-0.05, 0.0};
  auto weight = [&](int n, int m) {
    const Complex z = k + double(n) + Complex{0.0, 2.0 * kPi * p.a} * double(m);
    const Complex u = -plus.d * z * z / (4.0 * p.a);
    return 1.0 / (std::exp(u) + 1.0);
  };
  CHECK(std::abs(weight(0, 1) + weight(0, -1)) < 1e-12 * std::abs(weight(0, 0)));
  // two-point ratio test near the simple pole at k = pi a i
  const Complex pole{0.0, kPi * p.a};
  const double d1 = 1e-2, d2 = 2e-2;
  const Complex v1 = flat_continuation(pole + Complex{d1, 0.0}, plus, p, 1e-10).value;
  const Complex v2 = flat_continuation(pole + Complex{d2, 0.0}, plus, p, 1e-10).value;
  const double ratio = std::abs(v1) / std::abs(v2);
  CHECK(ratio > 1.6);
  CHECK(ratio < 2.6);
}

TEST_CASE("neg continuation matches the flat continuation on the overlap") {
  const QParams p = QParams::from_a(4.0);
  const KernelSpec plus = KernelSpec::plus(2.0);
  const Complex k{-0.05, 0.0};
  const Complex flat = flat_continuation(k, plus, p, 1e-11).value;
  const Complex neg = neg_continuation(k, plus, p, 0, 1e-11).value;
  CHECK(std::abs(flat - neg) < 1e-7 * std::abs(flat));
}

TEST_CASE("neg continuation: lambda/pi residues cancel at a Lambda_+ point") {
  // small-circle winding probe around a Lambda_+ lattice point: the
  // continuation must be regular there (the z^pi and z^lambda poles cancel).
  const QParams p = QParams::from_a(1.0);
  const KernelSpec plus = KernelSpec::plus(1.0);
  const Complex xi = xi_point(0, p, 1.0);
  const Complex center = 2.0 * xi - 3.0;  // in Lambda_+ - 3, Re < 0
  REQUIRE(center.real() < 0.0);
  // compare the contour integral of f around a small circle to zero
  auto f = [&](Complex k) { return neg_continuation(k, plus, p, 0, 1e-10).value; };
  const double rad = 5e-3;
  Complex ringsum{0.0, 0.0};
  const int n = 16;
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * kPi * i / n;
    ringsum += f(center + rad * Complex{std::cos(th), std::sin(th)});
  }
  ringsum /= double(n);
  const Complex nearby = f(center + Complex{3.0 * rad, 3.0 * rad});
  // a simple pole of residue R would make the ring mean ~ R/rad >> nearby
  CHECK(std::abs(ringsum) < 10.0 * std::abs(nearby) + 1e-6);
}

TEST_CASE("stable profile: convergence and 2 pi a periodicity in nu") {
  const QParams p = QParams::from_a(3.0);
  const KernelSpec plus = KernelSpec::plus(1.0);
  const StableProfile s1 = stable_profile(0.37, 0.9, plus, p, 80);
  REQUIRE(s1.converged);
  const StableProfile s2 = stable_profile(0.37, 0.9 + 2.0 * kPi * p.a, plus, p, 80);
  REQUIRE(s2.converged);
  CHECK(std::abs(s1.psi - s2.psi) < 1e-5 * std::max(1.0, std::abs(s1.psi)));
  // r_max too small reports non-convergence
  const StableProfile s3 = stable_profile(0.37, 0.9, plus, p, 2);
  CHECK_FALSE(s3.converged);
}

TEST_CASE("renormalized_eval: identity normalizer is a no-op on the value") {
  const QParams p = QParams::from_a(2.0);
  const EvalResult base{{1.7, -0.3}, 1e-12, 5};
  const EvalResult r = renormalized_eval(base, NormalizerKind::identity, {0.7, 0.2}, p);
  CHECK(std::abs(r.value - base.value) < 1e-12);
}

TEST_CASE("beta removes the k=-1/2 pole of the continuation") {
  const QParams p = QParams::from_a(4.0);
  const KernelSpec plus = KernelSpec::plus(2.0);
  const Complex pole{-0.5, 0.0};
  const EvalResult l = neg_continuation(pole - Complex{1e-3, 0.0}, plus, p, 0, 1e-10);
  const EvalResult r = neg_continuation(pole + Complex{1e-3, 0.0}, plus, p, 0, 1e-10);
  const Complex vl = renormalized_eval(l, NormalizerKind::beta, pole - Complex{1e-3, 0.0}, p).value;
  const Complex vr = renormalized_eval(r, NormalizerKind::beta, pole + Complex{1e-3, 0.0}, p).value;
  // bounded two-sided values with a bounded ratio: no pole left
  CHECK(std::abs(vl) < 1e4);
  CHECK(std::abs(vr) < 1e4);
  const double ratio = std::abs(vl) / std::abs(vr);
  CHECK(ratio > 0.5);
  CHECK(ratio < 2.0);
}
