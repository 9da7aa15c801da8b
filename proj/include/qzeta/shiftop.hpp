#ifndef QZETA_SHIFTOP_HPP
#define QZETA_SHIFTOP_HPP

#include "qzeta/qkernels.hpp"

namespace qzeta {

// Even kernel E(x) with a declared analyticity budget around the contour
// (u-regularity) and an optional closed-form tag for the known kernels.
struct RegularKernel {
  enum class Tag { generic, plus_kernel, minus_kernel, gauss, gauss_inv, one };
  std::function<Complex(Complex)> E;
  double regularity_radius = 0.0;
  Tag tag = Tag::generic;
  double d = 1.0;

  // imaginary_direction selects the sign convention (exp(-+ d x^2/a) + 1)^{-1}
  // that decays along the integration direction.
  static RegularKernel plus(double d, const QParams& p, bool imaginary_direction = true);
  static RegularKernel minus(double d, const QParams& p, bool imaginary_direction = true);
  static RegularKernel gauss(const QParams& p);      // q^{x^2}
  static RegularKernel gauss_inv(const QParams& p);  // q^{-x^2}
  static RegularKernel one();
};

// S E(x) = (E(x-1/2) - E(x+1/2)) / (q^x - q^{-x}); order 2 composes S twice.
// The removable singularity at q^{2x} = 1 is handled by a symmetric average.
Complex apply_shift(const RegularKernel& E, Complex x, int order, const QParams& p);

struct ShiftRogersPair {
  Complex lhs;  // S p_m^{(k)} (x)
  Complex rhs;  // (q^{-m/2} - q^{m/2}) p_{m-1}^{(k+1)} (x)
};
ShiftRogersPair shift_rogers_check(int m, Complex k, Complex x, const QParams& p);

enum class IntegrationKind { ct, im, re, sharp };

// int E delta_k in the normalization of the four integration types
// (ct: period mean; im: (1/2i) over the eps-shifted vertical line;
//  re: (1/2) over R - eps i; sharp: (1/2i) over the hook).
EvalResult integrate_kernel_delta(const std::function<Complex(Complex)>& E, Complex k,
                                  IntegrationKind kind, double eps, const QParams& p,
                                  double tol = 1e-10);

// Right-hand side of the shift formula assembled from the two higher-k
// integrals; equals int E delta_k when E is 1-regular.
EvalResult shift_step(const RegularKernel& E, Complex k, IntegrationKind kind, const QParams& p,
                      double tol = 1e-10);

// Meromorphic continuation by iterating the shift formula r steps, with an
// optional mu half-step at the end.  Throws when the kernel's regularity
// budget cannot cover the requested depth.
EvalResult shift_continuation(Complex k, const RegularKernel& E, int r, bool mu_half,
                              IntegrationKind kind, const QParams& p, double tol = 1e-10);

struct ALimitProbe {
  std::vector<double> a_values;
  std::vector<Complex> scaled_values;  // (a/4)^{k-1/2} E^(1)(k)
  Complex classical_target;            // sin(pi k) Z_+(k|1)
  Complex integral_target;             // the z-substituted hook integral
  std::vector<double> rel_deviation;
};

// Trend of the one-step shift continuation toward its classical a-limit on
// the strip (-3/2, -1/2), d = 1.
ALimitProbe shift_a_limit_probe(Complex k, const std::vector<double>& a_values,
                                double tol = 1e-8);

}  // namespace qzeta

#endif
