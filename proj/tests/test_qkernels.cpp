#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qzeta/classical.hpp"
#include "qzeta/qkernels.hpp"

using namespace qzeta;

namespace {
constexpr double kPi = 3.14159265358979323846;

Complex delta(Complex x, Complex k, const QParams& p) { return delta_kernel(x, k, p).value; }
}  // namespace

TEST_CASE("QParams ties q and a") {
  const QParams p = QParams::from_q(0.37);
  CHECK(p.a == doctest::Approx(-1.0 / std::log(0.37)).epsilon(1e-14));
  CHECK(p.period_p.imag() == doctest::Approx(2.0 * p.half_period_T).epsilon(1e-15));
  const QParams p2 = QParams::from_a(5.0);
  CHECK(p2.q == doctest::Approx(std::exp(-0.2)).epsilon(1e-15));
}

TEST_CASE("qpoch_log: accelerated route matches direct summation") {
  for (double a : {40.0, 300.0, 2000.0}) {
    const QParams p = QParams::from_a(a);
    for (Complex c : {Complex{0.7, 0.3}, Complex{1.0, 0.0}, Complex{-2.3, 1.1},
                      Complex{0.5, 40.0}, Complex{3.0, -0.4}}) {
      const QPochLog fast = qpoch_log(c, p);
      const QPochLog slow = qpoch_log_direct(c, p);
      CHECK(std::abs(fast.log_value - slow.log_value) < 1e-11 * (1.0 + std::abs(slow.log_value)));
    }
  }
}

TEST_CASE("delta: k=0 gives 1, x=0 gives the double zero") {
  const QParams p = QParams::from_a(2.0);
  CHECK(std::abs(delta({1.0, 1.0}, {0.0, 0.0}, p) - Complex{1.0, 0.0}) < 1e-14);
  CHECK(std::abs(delta({0.25, -0.8}, {0.0, 0.0}, p) - Complex{1.0, 0.0}) < 1e-14);
  CHECK(std::abs(delta({0.0, 0.0}, {0.7, 0.0}, p)) == 0.0);
}

TEST_CASE("delta: k=1 telescopes to (1-q^{2x})(1-q^{-2x})") {
  const QParams p = QParams::from_a(2.0);
  const Complex x{0.3, 0.2};
  const Complex expect = qp_one_minus(2.0 * x, p) * qp_one_minus(-2.0 * x, p);
  CHECK(std::abs(delta(x, {1.0, 0.0}, p) - expect) < 1e-12 * std::abs(expect));
}

TEST_CASE("delta: evenness, period pi*a*i, and the k-recurrence") {
  const QParams p = QParams::from_a(3.0);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int t = 0; t < 8; ++t) {
    const Complex x{u(rng), u(rng)};
    const Complex k{0.3 + 0.5 * std::abs(u(rng)), u(rng)};
    const Complex d0 = delta(x, k, p);
    CHECK(std::abs(delta(-x, k, p) - d0) < 1e-12 * std::abs(d0));
    CHECK(std::abs(delta(x + Complex{0.0, kPi * p.a}, k, p) - d0) < 1e-11 * std::abs(d0));
    const Complex lhs = delta(x, k + 1.0, p);
    const Complex rhs =
        qp_one_minus(2.0 * x + k, p) * qp_one_minus(-2.0 * x + k, p) * d0;
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
  }
}

TEST_CASE("delta: Moak limit trend at z=i, k=0.7") {
  const Complex z{0.0, 1.0};
  const Complex k{0.7, 0.0};
  const Complex target = std::pow(-z, k);
  double prev = 1e300;
  for (double a : {200.0, 400.0, 800.0}) {
    const QParams p = QParams::from_a(a);
    const Complex x = std::sqrt(a * z);
    const Complex v = std::pow(Complex{a / 4.0, 0.0}, k) * delta(x, k, p);
    const double err = std::abs(v - target);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 2e-3);
}

TEST_CASE("delta: Gamma-ratio limit at v=-1, k=0.6") {
  const Complex v{-1.0, 0.0};
  const Complex k{0.6, 0.0};
  const Complex sq = std::sqrt(v);
  const Complex target = std::exp(log_gamma(k + 2.0 * sq) + log_gamma(k - 2.0 * sq) -
                                  log_gamma(2.0 * sq) - log_gamma(-2.0 * sq));
  double prev = 1e300;
  for (double a : {200.0, 400.0, 800.0}) {
    const QParams p = QParams::from_a(a);
    const Complex val = std::pow(Complex{a, 0.0}, 2.0 * k) * delta(sq, k, p);
    const double err = std::abs(val - target);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 5e-2 * std::abs(target));
}

TEST_CASE("mu: k=0 and the half-shift symmetry") {
  const QParams p = QParams::from_a(2.5);
  CHECK(std::abs(mu_kernel({0.4, 0.3}, {0.0, 0.0}, p).value - Complex{1.0, 0.0}) < 1e-14);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int t = 0; t < 6; ++t) {
    const Complex x{u(rng), u(rng)};
    const Complex k{0.4 + std::abs(u(rng)), u(rng)};
    const Complex m1 = mu_kernel(x, k, p).value;
    const Complex m2 = mu_kernel(0.5 - x, k, p).value;
    CHECK(std::abs(m1 - m2) < 1e-12 * std::abs(m1));
  }
}

TEST_CASE("mu: symmetrization identity against delta by quadrature") {
  // int_im f(x^2) mu_k = (1+q^k)/2 * int_im f(x^2) delta_k, f = Gaussian
  const QParams p = QParams::from_a(3.0);
  const Complex k{0.8, 0.0};
  auto gauss = [&](Complex x) { return std::exp(x * x / p.a); };
  auto int_line = [&](auto&& weight) {
    auto f = [&](Complex x) { return gauss(x) * weight(x); };
    const double L = std::sqrt(p.a * 45.0) + 4.0;
    const Complex up{0.0, 1.0};
    return integrate_path(f, PathSpec::ray({0.0, 0.0}, up, L), 1e-11).value -
           integrate_path(f, PathSpec::ray({0.0, 0.0}, -up, L), 1e-11).value;
  };
  const Complex lhs = int_line([&](Complex x) { return mu_kernel(x, k, p).value; });
  const Complex rhs = 0.5 * (1.0 + qpow(k, p)) *
                      int_line([&](Complex x) { return delta_kernel(x, k, p).value; });
  CHECK(std::abs(lhs - rhs) < 1e-8 * std::abs(rhs));
}

TEST_CASE("normalizer: sigma(0) against the direct product") {
  const QParams p = QParams::from_q(0.25);
  const Complex s0 = normalizer(NormalizerKind::sigma, {0.0, 0.0}, p).value;
  double direct = 1.0;
  for (int j = 0; j < 120; ++j)
    direct *= (1.0 - std::pow(p.q, 0.5 + j)) / (1.0 - std::pow(p.q, j + 1.0));
  CHECK(std::abs(s0 - Complex{direct, 0.0}) < 1e-13 * std::abs(direct));
}

TEST_CASE("normalizer: p(k|d) antisymmetry") {
  const QParams p = QParams::from_a(4.0);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 8; ++t) {
    const Complex k{u(rng), u(rng)};
    const double d = 0.3 + std::abs(u(rng));
    const Complex pk = normalizer(NormalizerKind::p_factor, k, p, d).value;
    const Complex pm = normalizer(NormalizerKind::p_factor, -k, p, d).value;
    CHECK(std::abs(pk + pm) < 1e-13 * (std::abs(pk) + 1.0));
  }
}

TEST_CASE("phi: shift antisymmetry phi(k+1) = -phi(k)") {
  const QParams p = QParams::from_a(2.0);
  const Complex k{0.3, 0.0};
  const Complex p1 = gaussian_product_chi(k, p).phi_qform;
  const Complex p2 = gaussian_product_chi(k + 1.0, p).phi_qform;
  CHECK(std::abs(p2 + p1) < 1e-12 * std::abs(p1));
}

TEST_CASE("phi: theta normalization at k -> 0") {
  const QParams p = QParams::from_a(0.4);
  const Complex k{1e-7, 0.0};
  const Complex ratio = gaussian_product_chi(k, p).phi_qform / std::sin(kPi * k);
  // both theta sums
  double sum_q = 0.0;
  for (int j = -60; j <= 60; ++j) sum_q += std::pow(p.q, j * j / 4.0);
  const double rhs = sum_q / (2.0 * std::sqrt(kPi * p.a));
  double sum_Q = 1.0;
  const double Q = std::exp(-8.0 * p.a * kPi * kPi);
  for (int j = 1; j <= 60; ++j) sum_Q += 2.0 * std::pow(Q, j * j / 2.0);
  CHECK(std::abs(ratio.real() - rhs) < 1e-6 * rhs);
  CHECK(std::abs(ratio.real() - sum_Q) < 1e-6 * sum_Q);
}

TEST_CASE("phi: Q-form and q-form agree") {
  // visible-Q regime
  {
    const QParams p = QParams::from_a(0.3);
    const Complex k{0.37, 0.2};
    const GaussianChi g = gaussian_product_chi(k, p);
    CHECK(std::abs(g.phi_qform - g.phi_Qform) < 1e-12 * std::abs(g.phi_Qform));
  }
  // spec point: k = 0.7 + 0.4i, a = 5
  {
    const QParams p = QParams::from_a(5.0);
    const Complex k{0.7, 0.4};
    const GaussianChi g = gaussian_product_chi(k, p);
    CHECK(std::abs(g.phi_qform - g.phi_Qform) < 1e-12 * std::abs(g.phi_Qform));
  }
}

TEST_CASE("rogers: closed low orders") {
  const QParams p = QParams::from_a(2.0);
  const Complex k{0.9, 0.0};
  const Complex x{0.23, 0.11};
  CHECK(std::abs(rogers_polynomial(0, k, x, p).value - Complex{1.0, 0.0}) < 1e-14);
  const Complex p1 = qpow(x, p) + qpow(-x, p);
  CHECK(std::abs(rogers_polynomial(1, k, x, p).value - p1) < 1e-13 * std::abs(p1));
  const Complex p2 = qpow(2.0 * x, p) + qpow(-2.0 * x, p) +
                     (1.0 - qpow(k, p)) * (1.0 + p.q) / (1.0 - qpow(k + 1.0, p));
  CHECK(std::abs(rogers_polynomial(2, k, x, p).value - p2) < 1e-12 * std::abs(p2));
}

TEST_CASE("rogers: orthogonality of p1 and p2 under the CT pairing") {
  const QParams p = QParams::from_a(2.0);
  const Complex k{0.9, 0.0};
  auto p1 = [&](Complex x) { return rogers_polynomial(1, k, x, p).value; };
  auto p2 = [&](Complex x) { return rogers_polynomial(2, k, x, p).value; };
  const Complex ct = ct_pairing(p1, p2, k, p, 1e-12).value;
  CHECK(std::abs(ct) < 1e-10);
}

TEST_CASE("rogers: Gram-Schmidt p3 is orthogonal to p1") {
  const QParams p = QParams::from_a(2.0);
  const Complex k{0.9, 0.0};
  auto p1 = [&](Complex x) { return rogers_polynomial(1, k, x, p).value; };
  auto p3 = [&](Complex x) { return rogers_polynomial(3, k, x, p).value; };
  CHECK(std::abs(ct_pairing(p1, p3, k, p, 1e-12).value) < 1e-9);
  // monic leading coefficient: q^{-3x} dominates far out on the real axis
  const Complex x{9.0, 0.0};
  const Complex lead = qpow(-3.0 * x, p);
  const Complex val = rogers_polynomial(3, k, x, p).value;
  CHECK(std::abs(val - lead) < 0.05 * std::abs(lead));
}

TEST_CASE("pole_lattice: sharp strip has poles only at -1/2 - Z_+") {
  const QParams p = QParams::from_a(5.0);
  PoleFamily fam{PoleFamily::Kind::sharp_strip_poles, p, 2.0, 0, 0.0};
  const auto pts = pole_lattice(fam, Window{0.0, 5.0, -1.0, 1.0});
  CHECK(pts.empty());
  const auto neg = pole_lattice(fam, Window{-3.0, 0.0, -1.0, 1.0});
  REQUIRE(neg.size() == 3);
  CHECK(neg[0].location == Complex{-2.5, 0.0});
  CHECK(neg[2].location == Complex{-0.5, 0.0});
}

TEST_CASE("pole_lattice: Lambda contains the printed diagonal point at a=30, d=2") {
  const QParams p = QParams::from_a(30.0);
  PoleFamily fam{PoleFamily::Kind::Lambda, p, 2.0, 0, 0.0};
  const auto pts = pole_lattice(fam, Window{-10.5, -9.0, 0.0, 12.0});
  bool found = false;
  for (const auto& pt : pts)
    if (std::abs(pt.location - Complex{-9.70813, 9.70813}) < 1e-4) found = true;
  CHECK(found);
  CHECK(std::abs(2.0 * std::sqrt(kPi * p.a / (2.0 * 2.0)) - 9.70813) < 1e-5);
}

TEST_CASE("pole_lattice: far window is empty") {
  const QParams p = QParams::from_a(2.0);
  for (auto kind : {PoleFamily::Kind::Pi, PoleFamily::Kind::Lambda,
                    PoleFamily::Kind::sharp_strip_poles}) {
    PoleFamily fam{kind, p, 1.0, 0, 0.0};
    CHECK(pole_lattice(fam, Window{100.0, 101.0, 2.0, 3.0}).empty());
  }
}

TEST_CASE("delta: pole proximity raises") {
  const QParams p = QParams::from_a(2.0);
  // k + 2x = 0 exactly: denominator factor vanishes at j = 0
  const Complex k{0.8, 0.0};
  const Complex x = -0.5 * k;
  CHECK_THROWS_AS(delta_kernel(x, k, p), PoleProximityError);
}
