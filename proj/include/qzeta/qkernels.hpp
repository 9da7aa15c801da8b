#ifndef QZETA_QKERNELS_HPP
#define QZETA_QKERNELS_HPP

#include <optional>
#include <vector>

#include "qzeta/numerics.hpp"

namespace qzeta {

// Deformation parameters, always tied by q = exp(-1/a).
struct QParams {
  double a = 1.0;
  double q = 0.0;
  Complex period_p{0.0, 0.0};  // 2*pi*a*i
  double half_period_T = 0.0;  // pi*a

  static QParams from_a(double a);
  static QParams from_q(double q);
};

// 1 - q^t = 1 - exp(-t/a), cancellation-free for small |t|/a.
inline Complex qp_one_minus(Complex t, const QParams& p) { return -cexpm1(-t / p.a); }

// q^t = exp(-t/a)
inline Complex qpow(Complex t, const QParams& p) { return std::exp(-t / p.a); }

// 1/(e^u + 1), overflow-safe on both sides.
inline Complex fermi_weight(Complex u) {
  if (u.real() > 0.0) {
    const Complex e = std::exp(-u);
    return e / (1.0 + e);
  }
  return 1.0 / (std::exp(u) + 1.0);
}

// 1/(e^u - 1), overflow-safe; throws on the removable set e^u = 1.
inline Complex bose_weight(Complex u) {
  if (u.real() > 0.0) {
    const Complex e = std::exp(-u);
    const Complex den = 1.0 - e;
    if (std::abs(den) < 1e-13)
      throw PoleProximityError("bose_weight: exp(u) = 1 within 1e-13");
    return e / den;
  }
  const Complex den = cexpm1(u);
  if (std::abs(den) < 1e-13)
    throw PoleProximityError("bose_weight: exp(u) = 1 within 1e-13");
  return 1.0 / den;
}

// log prod_{j>=0} (1 - q^{j+c}) with truncation-tail error estimate.
// min_factor_abs reports the smallest |1-q^{j+c}| met, for pole screening.
struct QPochLog {
  Complex log_value{0.0, 0.0};
  double abs_error_est = 0.0;  // absolute error of the log
  long work = 0;
  double min_factor_abs = 1.0;
  bool exact_zero = false;  // some factor vanished: the product is exactly 0
};

QPochLog qpoch_log(Complex c, const QParams& p, double tol = 1e-14);
// Plain term-by-term summation; the oracle the accelerated route is checked against.
QPochLog qpoch_log_direct(Complex c, const QParams& p, double tol = 1e-14);

// Kernel E(x) selector for the integral/series evaluators.  kind=minus means
// (exp(d x^2/a)-1)^{-1} on real-type contours and (exp(-d x^2/a)-1)^{-1} on
// imaginary-type ones; same sign convention for plus/gauss/theta/dirichlet3.
struct KernelSpec {
  enum class Kind { one, minus, plus, gauss_pos, gauss_neg, theta, dirichlet3 };
  Kind kind = Kind::minus;
  double d = 1.0;

  static KernelSpec one() { return {Kind::one, 1.0}; }
  static KernelSpec minus(double d = 1.0) { return {Kind::minus, d}; }
  static KernelSpec plus(double d = 1.0) { return {Kind::plus, d}; }
  static KernelSpec gauss_pos(double d = 1.0) { return {Kind::gauss_pos, d}; }
  static KernelSpec gauss_neg(double d = 1.0) { return {Kind::gauss_neg, d}; }
  static KernelSpec theta(double d = 1.0) { return {Kind::theta, d}; }
  static KernelSpec dirichlet3(double d = 1.0) { return {Kind::dirichlet3, d}; }
};

// delta_k(x;q): the truncated theta kernel.
EvalResult delta_kernel(Complex x, Complex k, const QParams& p, double tol = 1e-14);

// log delta_k(x;q); exact_zero marks a vanishing numerator factor.
struct LogValue {
  Complex log{0.0, 0.0};
  bool exact_zero = false;
  double abs_error_est = 0.0;
  long work = 1;
};
LogValue delta_kernel_log(Complex x, Complex k, const QParams& p, double tol = 1e-14);

// mu_k(x;q): asymmetric variant, symmetric under x -> 1/2 - x.
EvalResult mu_kernel(Complex x, Complex k, const QParams& p, double tol = 1e-14);

enum class NormalizerKind { identity, beta, gamma_norm, sigma, alpha_norm, p_factor };

// beta/gamma/sigma/alpha renormalizers and the classical factor p(k|d).
EvalResult normalizer(NormalizerKind kind, Complex k, const QParams& p, double d = 1.0,
                      double tol = 1e-14);

// log of the normalizer product (beta/gamma_norm/sigma/alpha_norm only).
LogValue normalizer_log(NormalizerKind kind, Complex k, const QParams& p, double tol = 1e-14);

// phi(k) in both parameterizations plus the closed Gaussian product
// chi(k) = G_sharp(k) = phi(k) sqrt(pi a) e^{k(k+1)/(2a)} prod (1-q^{j+k})/(1-q^{j+2k}).
struct GaussianChi {
  EvalResult chi;
  Complex phi_qform;
  Complex phi_Qform;
};
GaussianChi gaussian_product_chi(Complex k, const QParams& p, double tol = 1e-14);

// Rogers polynomial p_m^(k)(x); m <= 2 from the closed formulas, higher m by
// Gram-Schmidt against the constant-term pairing.
EvalResult rogers_polynomial(int m, Complex k, Complex x, const QParams& p, double tol = 1e-12);

// Constant-term pairing {f,g} = CT(f g delta_k): mean over x = i a u, u in
// (-pi,pi], which realizes the algebraic constant term (half-integer powers
// of q^{2x} average to zero over the doubled circle).
EvalResult ct_pairing(const std::function<Complex(Complex)>& f,
                      const std::function<Complex(Complex)>& g, Complex k, const QParams& p,
                      double tol = 1e-12);

// Pole/zero lattice generators.
struct PoleFamily {
  enum class Kind { Pi, Lambda, LambdaPlus, Sa_singular, sharp_strip_poles, srepm_K };
  Kind kind = Kind::Pi;
  QParams params;
  double d = 1.0;
  int shift_r = 0;      // Lambda gets translated by -shift_r for the P_r sets
  double epsilon = 0.0; // srepm_K hook offset
};

struct PolePoint {
  Complex location;
  int order = 1;
};

struct Window {
  double re_lo, re_hi, im_lo, im_hi;
  bool contains(Complex z) const {
    return z.real() >= re_lo && z.real() <= re_hi && z.imag() >= im_lo && z.imag() <= im_hi;
  }
};

// xi_l = ((2l+1) pi a i / d)^{1/2} (principal square root); the minus-kernel
// lattice uses xi_l = (l pi a i / d)^{1/2} from l = 1.
Complex xi_point(int l, const QParams& p, double d, bool minus_kernel = false);

std::vector<PolePoint> pole_lattice(const PoleFamily& family, const Window& window);

// Distance from k to the contour-dependent singular set K^eps_pm of the
// real-direction evaluators (translated copies of the doubled hook).
double distance_to_srepm(Complex k, double eps, int sign, const QParams& p);

// Smallest distance from k to any point of the family inside a padded window
// around k; used for pole-proximity guards.
double distance_to_family(Complex k, const PoleFamily& family, double pad = 3.0);

}  // namespace qzeta

#endif
