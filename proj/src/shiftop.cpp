#include "qzeta/shiftop.hpp"

#include <algorithm>
#include <cmath>

#include "qzeta/classical.hpp"

namespace qzeta {

namespace {
constexpr double kPi = 3.14159265358979323846;

Complex fermi(Complex u) {
  if (u.real() > 0.0) {
    const Complex e = std::exp(-u);
    return e / (1.0 + e);
  }
  return 1.0 / (std::exp(u) + 1.0);
}

}  // namespace

RegularKernel RegularKernel::plus(double d, const QParams& p, bool imaginary_direction) {
  RegularKernel k;
  k.tag = Tag::plus_kernel;
  k.d = d;
  // poles on the diagonals x = +-xi_l, +-conj(xi_l); budget = Re xi_0 margin
  k.regularity_radius = std::sqrt(kPi * p.a / (2.0 * d)) - 0.05;
  const double sgn = imaginary_direction ? -1.0 : 1.0;
  k.E = [d, sgn, a = p.a](Complex x) { return fermi(sgn * d * x * x / a); };
  return k;
}

RegularKernel RegularKernel::minus(double d, const QParams& p, bool imaginary_direction) {
  RegularKernel k;
  k.tag = Tag::minus_kernel;
  k.d = d;
  k.regularity_radius = std::sqrt(kPi * p.a / d) - 0.05;  // first off-origin pole ring
  const double sgn = imaginary_direction ? -1.0 : 1.0;
  k.E = [d, sgn, a = p.a](Complex x) {
    const Complex den = cexpm1(sgn * d * x * x / a);
    if (std::abs(den) < 1e-280) throw PoleProximityError("minus kernel pole");
    return 1.0 / den;
  };
  return k;
}

RegularKernel RegularKernel::gauss(const QParams& p) {
  RegularKernel k;
  k.tag = Tag::gauss;
  k.regularity_radius = 1e9;
  k.E = [a = p.a](Complex x) { return std::exp(-x * x / a); };
  return k;
}

RegularKernel RegularKernel::gauss_inv(const QParams& p) {
  RegularKernel k;
  k.tag = Tag::gauss_inv;
  k.regularity_radius = 1e9;
  k.E = [a = p.a](Complex x) { return std::exp(x * x / a); };
  return k;
}

RegularKernel RegularKernel::one() {
  RegularKernel k;
  k.tag = Tag::one;
  k.regularity_radius = 1e9;
  k.E = [](Complex) { return Complex{1.0, 0.0}; };
  return k;
}

namespace {

Complex shift_once(const std::function<Complex(Complex)>& E, Complex x, const QParams& p) {
  const Complex den = qpow(x, p) - qpow(-x, p);
  if (std::abs(den) < 1e-8) {
    // removable at q^{2x} = 1: symmetric two-sided average
    const double h = 1e-5;
    Complex acc{0.0, 0.0};
    for (double s : {1.0, -1.0}) {
      const Complex xs = x + Complex{s * h, 0.0};
      acc += (E(xs - 0.5) - E(xs + 0.5)) / (qpow(xs, p) - qpow(-xs, p));
    }
    return 0.5 * acc;
  }
  return (E(x - 0.5) - E(x + 0.5)) / den;
}

}  // namespace

Complex apply_shift(const RegularKernel& E, Complex x, int order, const QParams& p) {
  if (order == 1) return shift_once(E.E, x, p);
  if (order == 2) {
    auto se = [&](Complex y) { return shift_once(E.E, y, p); };
    return shift_once(se, x, p);
  }
  throw DomainError("apply_shift: order must be 1 or 2");
}

ShiftRogersPair shift_rogers_check(int m, Complex k, Complex x, const QParams& p) {
  if (m < 1) throw DomainError("shift_rogers_check: m >= 1 required");
  auto pm = [&](Complex y) { return rogers_polynomial(m, k, y, p).value; };
  ShiftRogersPair out;
  out.lhs = shift_once(pm, x, p);
  const Complex factor = qpow(-0.5 * double(m), p) - qpow(0.5 * double(m), p);
  out.rhs = factor * rogers_polynomial(m - 1, k + 1.0, x, p).value;
  return out;
}

EvalResult integrate_kernel_delta(const std::function<Complex(Complex)>& E, Complex k,
                                  IntegrationKind kind, double eps, const QParams& p,
                                  double tol) {
  const double L_im = std::sqrt(p.a * 45.0) + 2.0 * std::abs(k.real()) + 4.0;
  switch (kind) {
    case IntegrationKind::ct: {
      auto f = [&](Complex t) {
        const Complex x = Complex{0.0, 0.5 * p.a} * t;
        return E(x) * delta_kernel(x, k, p).value;
      };
      EvalResult r = integrate_path(f, PathSpec::period_segment({-kPi, 0.0}, {kPi, 0.0}), tol);
      r.value /= 2.0 * kPi;
      r.abs_error_est /= 2.0 * kPi;
      return r;
    }
    case IntegrationKind::im: {
      auto f = [&](Complex x) { return E(x) * delta_kernel(x, k, p).value; };
      EvalResult r = integrate_path(f, PathSpec::imaginary_axis_shifted(eps, L_im), tol);
      r.value /= Complex{0.0, 2.0};
      r.abs_error_est /= 2.0;
      return r;
    }
    case IntegrationKind::re: {
      auto f = [&](Complex x) { return E(x) * delta_kernel(x, k, p).value; };
      const Complex c{0.0, -eps};
      EvalResult right = integrate_path(f, PathSpec::ray(c, {1.0, 0.0}, L_im), tol);
      EvalResult left = integrate_path(f, PathSpec::ray(c, {-1.0, 0.0}, L_im), tol);
      EvalResult r;
      r.value = 0.5 * (right.value - left.value);
      r.abs_error_est = 0.5 * (right.abs_error_est + left.abs_error_est);
      r.work = right.work + left.work;
      return r;
    }
    case IntegrationKind::sharp: {
      auto f = [&](Complex x) { return E(x) * delta_kernel(x, k, p).value; };
      EvalResult r = integrate_path(f, PathSpec::sharp_hook(eps, L_im), tol);
      r.value /= Complex{0.0, 2.0};
      r.abs_error_est /= 2.0;
      return r;
    }
  }
  throw DomainError("integrate_kernel_delta: unknown integration kind");
}

namespace {

// for the imaginary integration the line offset must stay below Re(k)/2 so
// that no pole of delta_k sits between the axis and the line
double default_eps(IntegrationKind kind, Complex k, const QParams& p) {
  switch (kind) {
    case IntegrationKind::im:
      return std::min({0.35, 0.45 * kPi * p.a, 0.45 * std::max(k.real(), 0.01)});
    case IntegrationKind::re:
    case IntegrationKind::sharp:
      return std::min(0.2, 0.2 * kPi * p.a);
    case IntegrationKind::ct:
      return 0.0;
  }
  return 0.0;
}

struct ShiftCoeffs {
  Complex inv_c;  // (1-q^{k+1}) / ((1+q^k)(1-q^{2k+1}))
  Complex w;      // q^{3/2+k} / ((1+q^k)(1+q^{k+1})(1-q^{2k+1})(1-q^{2k+3}))
};

// Reduced coefficient forms, regular at integer k where the raw
// (1-q^{k+1})/(1-q^{2k+2}) pieces are 0/0.
ShiftCoeffs shift_coeffs(Complex k, const QParams& p) {
  const Complex f1 = 1.0 + qpow(k, p);
  const Complex f2 = 1.0 + qpow(k + 1.0, p);
  const Complex f3 = qp_one_minus(2.0 * k + 1.0, p);
  const Complex f4 = qp_one_minus(2.0 * k + 3.0, p);
  if (std::abs(f1) < 1e-13 || std::abs(f2) < 1e-13 || std::abs(f3) < 1e-13 ||
      std::abs(f4) < 1e-13)
    throw PoleProximityError("shift formula: coefficient pole (half-integer lattice)");
  ShiftCoeffs c;
  c.inv_c = qp_one_minus(k + 1.0, p) / (f1 * f3);
  c.w = qpow(1.5 + k, p) / (f1 * f2 * f3 * f4);
  return c;
}

}  // namespace

EvalResult shift_step(const RegularKernel& E, Complex k, IntegrationKind kind, const QParams& p,
                      double tol) {
  const ShiftCoeffs c = shift_coeffs(k, p);
  const EvalResult i1 =
      integrate_kernel_delta(E.E, k + 1.0, kind, default_eps(kind, k + 1.0, p), p, tol);
  auto s2 = [&](Complex x) { return apply_shift(E, x, 2, p); };
  const EvalResult i2 =
      integrate_kernel_delta(s2, k + 2.0, kind, default_eps(kind, k + 2.0, p), p, tol);
  EvalResult r;
  r.value = c.inv_c * i1.value + c.w * i2.value;
  r.abs_error_est = std::abs(c.inv_c) * i1.abs_error_est + std::abs(c.w) * i2.abs_error_est;
  r.work = i1.work + i2.work;
  return r;
}

namespace {

// Continuation by depth: cont(E, k, depth) evaluates int E delta_k for
// k in K_eps - depth, recursing on (depth-1, E at k+1) and (depth-2, S^2 E at k+2).
EvalResult continue_depth(const RegularKernel& E, Complex k, int depth, IntegrationKind kind,
                          const QParams& p, double tol) {
  if (depth <= 0) {
    return integrate_kernel_delta(E.E, k, kind, default_eps(kind, k, p), p, tol);
  }
  const ShiftCoeffs c = shift_coeffs(k, p);
  const EvalResult i1 = continue_depth(E, k + 1.0, depth - 1, kind, p, tol);
  RegularKernel s2e;
  s2e.tag = RegularKernel::Tag::generic;
  s2e.regularity_radius = E.regularity_radius - 1.0;
  s2e.d = E.d;
  s2e.E = [&E, &p](Complex x) { return apply_shift(E, x, 2, p); };
  const EvalResult i2 = continue_depth(s2e, k + 2.0, depth - 2, kind, p, tol);
  EvalResult r;
  r.value = c.inv_c * i1.value + c.w * i2.value;
  r.abs_error_est = std::abs(c.inv_c) * i1.abs_error_est + std::abs(c.w) * i2.abs_error_est;
  r.work = i1.work + i2.work;
  return r;
}

}  // namespace

EvalResult shift_continuation(Complex k, const RegularKernel& E, int r, bool mu_half,
                              IntegrationKind kind, const QParams& p, double tol) {
  if (r < 0) throw DomainError("shift_continuation: r must be nonnegative");
  if (double(r) + 0.5 > E.regularity_radius + 1e-9)
    throw DomainError("shift_continuation: kernel regularity budget exceeded");
  if (!mu_half) return continue_depth(E, k, r, kind, p, tol);
  if (kind != IntegrationKind::im)
    throw DomainError("shift_continuation: mu half-step applies to the imaginary integration");
  // E(k) = 2 (1+q^k)^{-1} int_im E mu_k, continued r further steps in k+... :
  // apply the half-step at the bottom of the recursion by replacing the
  // direct integral with the mu form (poles only at pi a i + 2 pi a i Z).
  if (r == 0) {
    const double eps = 0.25;
    auto f = [&](Complex x) { return E.E(x) * mu_kernel(x, k, p).value; };
    const double L = std::sqrt(p.a * 45.0) + 2.0 * std::abs(k.real()) + 4.0;
    EvalResult line = integrate_path(f, PathSpec::imaginary_axis_shifted(eps, L), tol);
    line.value /= Complex{0.0, 2.0};
    const Complex pref = 2.0 / (1.0 + qpow(k, p));
    EvalResult out;
    out.value = pref * line.value;
    out.abs_error_est = std::abs(pref) * line.abs_error_est;
    out.work = line.work;
    return out;
  }
  const ShiftCoeffs c = shift_coeffs(k, p);
  const EvalResult i1 = shift_continuation(k + 1.0, E, r - 1, mu_half, kind, p, tol);
  RegularKernel s2e;
  s2e.tag = RegularKernel::Tag::generic;
  s2e.regularity_radius = E.regularity_radius - 1.0;
  s2e.E = [&E, &p](Complex x) { return apply_shift(E, x, 2, p); };
  const EvalResult i2 = shift_continuation(k + 2.0, s2e, std::max(0, r - 2), mu_half, kind, p, tol);
  EvalResult out;
  out.value = c.inv_c * (i1.value + c.g * i2.value);
  out.abs_error_est = std::abs(c.inv_c) * (i1.abs_error_est + std::abs(c.g) * i2.abs_error_est);
  out.work = i1.work + i2.work;
  return out;
}

ALimitProbe shift_a_limit_probe(Complex k, const std::vector<double>& a_values, double tol) {
  if (!(k.real() > -1.5 && k.real() < -0.5))
    throw DomainError("shift_a_limit_probe: k must lie in the strip (-3/2, -1/2)");
  ALimitProbe out;
  out.a_values = a_values;
  out.classical_target =
      std::sin(kPi * k) * classical_Z(k, ZVariant::plus, 1.0).value;
  {
    // (1/(2i(k+3/2)(k+1/2))) int_sharp z^{-1/2} (-z)^{k+2} (-e^z (1-e^z)/(1+e^z)^3) dz
    const double eps = 0.05;
    auto f = [&](Complex z) {
      const Complex ez = std::exp(z);
      const Complex ker = -ez * (1.0 - ez) / std::pow(1.0 + ez, 3);
      return std::pow(z, -0.5) * std::pow(-z, k + 2.0) * ker;
    };
    const EvalResult quad = integrate_path(f, PathSpec::sharp_hook(eps, 60.0), tol);
    out.integral_target =
        quad.value / (Complex{0.0, 2.0} * (k + 1.5) * (k + 0.5));
  }
  for (double a : a_values) {
    const QParams p = QParams::from_a(a);
    const RegularKernel E = RegularKernel::plus(1.0, p, /*imaginary_direction=*/false);
    const EvalResult e1 = shift_continuation(k, E, 1, false, IntegrationKind::sharp, p, tol);
    const Complex scaled = std::pow(Complex{a / 4.0, 0.0}, k - 0.5) * e1.value;
    out.scaled_values.push_back(scaled);
    const double denom = std::max(std::abs(out.classical_target), 1e-8);
    out.rel_deviation.push_back(std::abs(scaled - out.classical_target) / denom);
  }
  return out;
}

}  // namespace qzeta
