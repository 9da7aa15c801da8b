#ifndef QZETA_SYMMETRY_HPP
#define QZETA_SYMMETRY_HPP

#include <optional>

#include "qzeta/qzeta_contours.hpp"
#include "qzeta/zeros.hpp"

namespace qzeta {

enum class SymFlavor { hat_sym, hat_zeta, tilde_zeta, sharp_hat };

struct SymSpec {
  SymFlavor flavor = SymFlavor::hat_zeta;
  double d = 1.0;
  std::optional<int> period_lock;  // M in the flavor's transcendental lock equation
};

// Solve the flavor's period-lock equation for a (bisection):
// hat_sym: a log a = M;  tilde_zeta: (a/2) log(a/(16 pi)) = M.
double solve_period_lock(SymFlavor flavor, int M);

// The flavor's (anti)symmetrized combination at k.
EvalResult symmetrized_eval(Complex k, const SymSpec& spec, const QParams& p,
                            double tol = 1e-9);

struct StableCount {
  int zeros_minus_poles = 0;
  double formula_value = 0.0;
  int r_used = 0;
};

// Winding-based zeros-poles over the half-period strip S_r, against the
// flavor's closed-form prediction.  Requires the period lock where the flavor
// carries a-power prefactors and a plateau-reaching r.
StableCount stable_count(const SymSpec& spec, int r, const QParams& p, double tol = 1e-8);

enum class ZeroClass { deformation_of_classical, imaginary, other };

struct ProbeZero {
  ZeroRecord record;
  ZeroClass classification = ZeroClass::other;
  std::optional<Complex> anchor;
  double im_drift = 0.0;
};

struct ProbeReport {
  std::vector<ProbeZero> zeros;
  int n_imaginary = 0;
  int n_classical = 0;
  int n_other = 0;
};

// Locate zeros in the window and classify each against the classical anchors
// (zeta zeros, p(k|d) zeros, pole-attached points).
ProbeReport conjecture_probe(const SymSpec& spec, const Rect& window, const QParams& p,
                             double tol = 1e-6);

}  // namespace qzeta

#endif
