#ifndef QZETA_QZETA_CONTOURS_HPP
#define QZETA_QZETA_CONTOURS_HPP

#include "qzeta/qkernels.hpp"

namespace qzeta {

// (-i) int_0^{i inf} E(x) delta_k(x;q) dx for Re k > 0, with the
// imaginary-direction sign convention of the kernel.
EvalResult imaginary_integral(Complex k, const KernelSpec& kernel, const QParams& p,
                              double tol = 1e-10);

enum class RealContourWhich { Zplus_path, Zminus_path, re_combination, sharp_combination };

// Hook-contour evaluators Z^+/Z^-/Z^re/Z^sharp (real-direction kernels).
EvalResult real_contour_eval(Complex k, RealContourWhich which, const KernelSpec& kernel,
                             double epsilon, const QParams& p, double tol = 1e-10);

// Strip half-width for the flat continuation: min(sqrt(pi a/(2d)), 1/4).
double flat_epsilon(const QParams& p, double d);

// Strip half-width of the sharp/plus strip: min(sqrt(pi a/(2d)), pi a/2).
double sharp_epsilon(const QParams& p, double d);

// Shifted-axis continuation on -2 eps < Re k < 2 eps (plus kernel):
// (1/2i) int_{eps - i inf}^{eps + i inf} + z^pi_0(k).
EvalResult flat_continuation(Complex k, const KernelSpec& kernel, const QParams& p,
                             double tol = 1e-10);

// z^pi_n(k|d): the n-th pole-front term, with the adaptive m-sum.
EvalResult z_pi_term(int n, Complex k, const KernelSpec& kernel, const QParams& p,
                     double tol = 1e-12);

// z^lambda_l(k|d): the diagonal-lattice term pair.
EvalResult z_lambda_term(int l, Complex k, const KernelSpec& kernel, const QParams& p,
                         double tol = 1e-12);

// Pole-decomposition continuation for Re k < 0 (Z^{-r} for r > 0 flips the
// first r pole-front terms; r = 0 is the plain continuation Z^neg).
EvalResult neg_continuation(Complex k, const KernelSpec& kernel, const QParams& p, int r = 0,
                            double tol = 1e-10);

// value = mantissa * exp(log_scale): the deep-left regime shrinks like
// exp(-c (Re k)^2) and leaves the double range before beta-renormalization.
struct ScaledValue {
  Complex mantissa{0.0, 0.0};
  double log_scale = 0.0;
  double abs_error_est = 0.0;  // relative to exp(log_scale)
  long work = 1;
};
ScaledValue neg_continuation_scaled(Complex k, const KernelSpec& kernel, const QParams& p,
                                    int r = 0, double tol = 1e-10);

// The continuation of the imaginary evaluator valid on both signs of Re k:
// direct integral (Re k > 0), flat strip, or neg_continuation.
EvalResult imaginary_continued(Complex k, const KernelSpec& kernel, const QParams& p,
                               double tol = 1e-10);

// normalizer(kind)(k) * base.
EvalResult renormalized_eval(const EvalResult& base, NormalizerKind kind, Complex k,
                             const QParams& p, double d = 1.0);

struct StableProfile {
  Complex psi{0.0, 0.0};
  bool converged = false;
  std::vector<double> cauchy_diffs;
  int r_used = 0;
};

// Sequence beta(k_r) Z^{neg}(k_r) along k_r = kappa - r + i nu, with plateau
// detection at 1e-6.
StableProfile stable_profile(double kappa, double nu, const KernelSpec& kernel,
                             const QParams& p, int r_max, double tol = 1e-8);

}  // namespace qzeta

#endif
