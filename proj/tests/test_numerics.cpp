#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qzeta/numerics.hpp"
#include "qzeta/qkernels.hpp"

using namespace qzeta;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("stable_product: empty/identity product") {
  auto r = stable_product([](long) { return Complex{0.0, 0.0}; }, 0.5, 1e-12);
  CHECK(r.value.real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.value.imag() == 0.0);
  CHECK(r.abs_error_est <= 1e-14);
  CHECK(r.work >= 1);
}

TEST_CASE("stable_product: (q;q)_inf against direct multiplication") {
  const double q = 0.5;
  auto r = stable_product(
      [q](long j) { return std::log(Complex{1.0 - std::pow(q, double(j + 1)), 0.0}); }, q, 1e-15);
  double direct = 1.0;
  for (int j = 0; j < 200; ++j) direct *= 1.0 - std::pow(q, double(j + 1));
  CHECK(std::abs(r.value.real() - direct) < 1e-14);
  CHECK(std::abs(r.value - Complex{direct, 0.0}) <= r.abs_error_est + 1e-14);
}

TEST_CASE("stable_product: pi*a*i shift of x leaves the double product unchanged") {
  const QParams p = QParams::from_a(1.7);
  auto prod_at = [&](Complex x) {
    auto lf = [&, x](long j) {
      return std::log(qp_one_minus(double(j) + 2.0 * x, p) * qp_one_minus(double(j) - 2.0 * x, p));
    };
    return stable_product(lf, p.q, 1e-14).value;
  };
  const Complex x{0.31, 0.12};
  const Complex shifted = x + Complex{0.0, kPi * p.a};
  CHECK(std::abs(prod_at(x) - prod_at(shifted)) < 1e-12 * std::abs(prod_at(x)));
}

TEST_CASE("stable_product: invariant under reordering a finite prefix") {
  const double q = 0.6;
  std::vector<Complex> logs;
  for (int j = 0; j < 40; ++j)
    logs.push_back(std::log(Complex{1.0 - std::pow(q, j + 0.7), 0.02 * std::pow(q, j)}));
  auto eval = [&](const std::vector<Complex>& order) {
    return stable_product(
        [&](long j) { return j < long(order.size()) ? order[size_t(j)]
                                                    : std::log(Complex{1.0, 0.0}); },
        q, 1e-13);
  };
  const Complex base = eval(logs).value;
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    auto shuffled = logs;
    std::shuffle(shuffled.begin(), shuffled.begin() + 17, rng);
    CHECK(std::abs(eval(shuffled).value - base) < 1e-12 * std::abs(base));
  }
}

TEST_CASE("integrate_path: winding integral of dz/z around the unit square") {
  auto f = [](Complex z) { return 1.0 / z; };
  Complex total{0.0, 0.0};
  const Complex c[4] = {{1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}};
  for (int i = 0; i < 4; ++i)
    total += integrate_path(f, PathSpec::segment(c[i], c[(i + 1) % 4]), 1e-12).value;
  CHECK(std::abs(total - Complex{0.0, 2.0 * kPi}) < 1e-11);
}

TEST_CASE("integrate_path: Gaussian ray") {
  auto f = [](Complex z) { return std::exp(-z * z); };
  const auto r = integrate_path(f, PathSpec::ray({0.0, 0.0}, {1.0, 0.0}, 8.0), 1e-13);
  CHECK(std::abs(r.value - Complex{std::sqrt(kPi) / 2.0, 0.0}) < 1e-12);
}

TEST_CASE("integrate_path: sharp hook against a dense fixed-rule oracle") {
  auto f = [](Complex z) { return std::exp(-z * z); };
  const double eps = 0.1;
  const auto r = integrate_path(f, PathSpec::sharp_hook(eps, 9.0), 1e-11);
  // oracle: 1e5-node midpoint rule on the same four legs, generous length
  const double L = 14.0;
  Complex oracle{0.0, 0.0};
  const Complex pts[5] = {{L, eps}, {0.0, eps}, {0.0, 0.0}, {0.0, -eps}, {L, -eps}};
  for (int leg = 0; leg < 4; ++leg) {
    const Complex a = pts[leg], b = pts[leg + 1];
    const long n = 100000;
    Complex s{0.0, 0.0};
    for (long m = 0; m < n; ++m) s += f(a + (b - a) * ((m + 0.5) / double(n)));
    oracle += s * (b - a) / double(n);
  }
  CHECK(std::abs(r.value - oracle) < 1e-9);
}

TEST_CASE("integrate_path: reversal is the exact negative") {
  auto f = [](Complex z) { return std::exp(-z * z) * (z + Complex{0.2, 0.1}); };
  const Complex a{-0.3, 0.2}, b{1.7, -0.4};
  const Complex fwd = integrate_path(f, PathSpec::segment(a, b), 1e-12).value;
  const Complex bwd = integrate_path(f, PathSpec::segment(b, a), 1e-12).value;
  CHECK(fwd == -bwd);
}

TEST_CASE("period rule: error decays exponentially under node doubling") {
  // pi*a*i-periodic analytic integrand along the period segment
  const QParams p = QParams::from_a(2.0);
  auto f = [&](Complex t) {
    const Complex z = std::exp(Complex{0.0, 1.0} * t);  // q^{2x} on the unit circle
    return 1.0 / (3.0 + z + 1.0 / z);
  };
  auto trap = [&](long n) {
    Complex s{0.0, 0.0};
    for (long m = 0; m < n; ++m)
      s += f(Complex{-kPi + 2.0 * kPi * (m + 0.5) / double(n), 0.0});
    return s / double(n);
  };
  const Complex exact = trap(4096);
  const double e1 = std::abs(trap(8) - exact);
  const double e2 = std::abs(trap(16) - exact);
  const double e3 = std::abs(trap(32) - exact);
  CHECK(e1 / std::max(e2, 1e-300) > 10.0);
  CHECK(e2 / std::max(e3, 1e-300) > 10.0);
}

TEST_CASE("finite_difference_derivative: polynomials and exp") {
  auto sq = [](Complex z) { return z * z; };
  CHECK(std::abs(finite_difference_derivative(sq, {1.0, 0.0}, 1e-5) - Complex{2.0, 0.0}) < 1e-9);
  auto ex = [](Complex z) { return std::exp(z); };
  CHECK(std::abs(finite_difference_derivative(ex, {0.0, 0.0}, 1e-6) - Complex{1.0, 0.0}) < 1e-9);
}

TEST_CASE("finite_difference_derivative: zeta'(2) against the termwise series") {
  auto zeta_series = [](Complex s) {
    Complex acc{0.0, 0.0};
    for (int n = 1; n < 40000; ++n) acc += std::exp(-s * std::log(double(n)));
    return acc;
  };
  const Complex fd = finite_difference_derivative(zeta_series, {2.0, 0.0}, 1e-4);
  Complex oracle{0.0, 0.0};
  for (int n = 2; n < 40000; ++n) oracle += -std::log(double(n)) * std::pow(double(n), -2.0);
  CHECK(std::abs(fd - oracle) < 1e-7);
}

TEST_CASE("stable_product: work cap raises") {
  CHECK_THROWS_AS(stable_product([](long) { return Complex{1.0, 0.0}; }, 0.99, 1e-12, 50),
                  ConvergenceError);
}
