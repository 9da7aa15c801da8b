#ifndef QZETA_QZETA_SERIES_HPP
#define QZETA_QZETA_SERIES_HPP

#include "qzeta/qkernels.hpp"

namespace qzeta {

enum class SharpForm { pair_form, single_form };

struct SharpOptions {
  SharpForm form = SharpForm::pair_form;
  double cutoff_c = 20.0;  // j-cutoff ceil(C sqrt(a max(1,d)/d)) for Gaussian-decay kernels
  double tol = 1e-12;
};

// Residue series over x = (k+j)/2 behind the sharp contour:
//   -(a pi / 2) P(k) sum_j I_j w(k+j)
// with the kernel-dependent weight w.  kernel=one requires Re k < 0 (the
// series diverges otherwise and the evaluation refuses).
EvalResult sharp_series(Complex k, const KernelSpec& kernel, const QParams& p,
                        const SharpOptions& opts = {});

// P(k) = prod (1-q^{j+k})(1-q^{j-k}) / ((1-q^{j+2k})(1-q^{j+1})).
EvalResult sharp_prefactor(Complex k, const QParams& p, double tol = 1e-14);

// log P(k); exact_zero at integer k.
LogValue sharp_prefactor_log(Complex k, const QParams& p, double tol = 1e-14);

enum class CtMethod { series, product, trapezoid };

// Constant-term family: residue series / closed product (Re k < 0), or the
// period-trapezoid integral of delta_k (Re k > 0).
EvalResult constant_term(Complex k, const QParams& p, CtMethod method, double tol = 1e-12);

// The product 2 prod (1-q^{k+j})(1-q^{k+j+1})/((1-q^{2k+j})(1-q^{j+1}))
// (equals the trapezoid CT for Re k > 0 and -(2/(a pi)) C_sharp for Re k < 0).
EvalResult ct_product(Complex k, const QParams& p, double tol = 1e-14);

enum class GaussianMethod { series, closed_form };

// G_sharp(k): residue series or phi-product closed form.
EvalResult sharp_gaussian(Complex k, const QParams& p, GaussianMethod method,
                          double tol = 1e-12);

// G_sharp(k; m, n): Rogers-weighted Gaussian moments.
EvalResult rogers_gauss_moment(Complex k, int m, int n, const QParams& p, double tol = 1e-10);

// sum_{n<=terms} q^{sn} / [n]_q^s, Re s > 0.
EvalResult ueno_zeta(Complex s, const QParams& p, long terms);

struct TildeOptions {
  long terms = 200;
  bool symmetrized = false;
  int sqrt_branch = 0;  // 0: principal sqrt(a u n); 1: negated branch
};

// sum_{n<=terms} delta_{-s}(sqrt(a u n); q), optionally real-symmetrized.
EvalResult singular_tilde_zeta(Complex s, Complex u, const QParams& p,
                               const TildeOptions& opts = {});

}  // namespace qzeta

#endif
