#include "qzeta/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "qzeta/classical.hpp"
#include "qzeta/qzeta_series.hpp"

namespace qzeta {

namespace {
constexpr double kPi = 3.14159265358979323846;

double lock_residual(SymFlavor flavor, double a, int M) {
  switch (flavor) {
    case SymFlavor::hat_sym:
      return a * std::log(a) - double(M);
    case SymFlavor::tilde_zeta:
      return 0.5 * a * std::log(a / (16.0 * kPi)) - double(M);
    default:
      throw DomainError("solve_period_lock: flavor has no a-power prefactors");
  }
}

// One-sided evaluator (positive side by direct integral, negative by the
// pole-decomposition continuation, strip by the flat form).
Complex imag_side(Complex k, double d, const QParams& p, double tol) {
  return imaginary_continued(k, KernelSpec::plus(d), p, tol).value;
}

}  // namespace

double solve_period_lock(SymFlavor flavor, int M) {
  if (M < 1) throw DomainError("solve_period_lock: M >= 1 required");
  double lo = 1.0 + 1e-9, hi = 2.0;
  while (lock_residual(flavor, hi, M) < 0.0) hi *= 2.0;
  if (flavor == SymFlavor::tilde_zeta) lo = 16.0 * kPi + 1e-9;  // residual negative below
  while (lock_residual(flavor, lo, M) > 0.0) lo = 1.0 + 0.5 * (lo - 1.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (lock_residual(flavor, mid, M) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

EvalResult symmetrized_eval(Complex k, const SymSpec& spec, const QParams& p, double tol) {
  if (spec.period_lock) {
    const double res = lock_residual(spec.flavor == SymFlavor::hat_sym ? SymFlavor::hat_sym
                                                                       : spec.flavor,
                                     p.a, *spec.period_lock);
    if (spec.flavor == SymFlavor::hat_sym || spec.flavor == SymFlavor::tilde_zeta)
      if (std::abs(res) > 1e-10 * std::max(1.0, p.a))
        throw DomainError("symmetrized_eval: params.a violates the period lock");
  }
  // All flavors are built from a value at +k and one at -k; evaluate on the
  // side where each constituent is defined and combine with the prefactors.
  Complex kp = k, km = -k;
  if (k.real() < 0.0) std::swap(kp, km);  // evaluate the integral side at Re >= 0
  EvalResult out;
  switch (spec.flavor) {
    case SymFlavor::hat_sym: {
      const Complex zp = imag_side(kp, spec.d, p, tol);
      const Complex zm = imag_side(km, spec.d, p, tol);
      const Complex gp = normalizer(NormalizerKind::gamma_norm, kp, p).value;
      const Complex gm = normalizer(NormalizerKind::gamma_norm, km, p).value;
      const Complex ap = std::pow(Complex{p.a, 0.0}, kp);
      out.value = ap * gp * zp + (1.0 / ap) * gm * zm;
      break;
    }
    case SymFlavor::hat_zeta: {
      const Complex zp = imag_side(kp, spec.d, p, tol);
      const Complex zm = imag_side(km, spec.d, p, tol);
      const Complex sp = normalizer(NormalizerKind::sigma, kp, p).value;
      const Complex sm = normalizer(NormalizerKind::sigma, km, p).value;
      const Complex v = 4.0 * sp * zp - 4.0 * sm * zm;
      out.value = (k.real() < 0.0) ? -v : v;  // odd combination
      break;
    }
    case SymFlavor::tilde_zeta: {
      const Complex zp = imag_side(kp, spec.d, p, tol);
      const Complex zm = imag_side(km, spec.d, p, tol);
      const Complex apf = std::pow(Complex{p.a / (16.0 * kPi), 0.0}, 0.5 * kp - 0.75);
      const Complex amf = std::pow(Complex{p.a / (16.0 * kPi), 0.0}, -0.5 * kp - 0.75);
      const Complex alp = normalizer(NormalizerKind::alpha_norm, kp, p).value;
      const Complex alm = normalizer(NormalizerKind::alpha_norm, km, p).value;
      const Complex v = (apf * alp * zp - amf * alm * zm) / (4.0 * kPi);
      out.value = (k.real() < 0.0) ? -v : v;
      break;
    }
    case SymFlavor::sharp_hat: {
      // strip guard: regular for |Im k| < sqrt(2 pi a)
      if (std::abs(k.imag()) >= std::sqrt(2.0 * kPi * p.a))
        throw DomainError("symmetrized_eval: sharp_hat outside the strip |Im k| < sqrt(2 pi a)");
      const SharpOptions so{SharpForm::pair_form, 20.0, tol};
      const Complex zp = sharp_series(k, KernelSpec::plus(spec.d), p, so).value;
      const Complex zm = sharp_series(-k, KernelSpec::plus(spec.d), p, so).value;
      const Complex cp = gaussian_product_chi(k, p).chi.value;
      const Complex cm = gaussian_product_chi(-k, p).chi.value;
      out.value = zp / cp - zm / cm;
      break;
    }
  }
  out.abs_error_est = std::abs(out.value) * 1e-8;  // propagated; constituents dominate
  out.work = 1;
  return out;
}

StableCount stable_count(const SymSpec& spec, int r, const QParams& p, double tol) {
  if ((spec.flavor == SymFlavor::hat_sym || spec.flavor == SymFlavor::tilde_zeta) &&
      !spec.period_lock)
    throw DomainError("stable_count: flavor requires a period lock");
  // plateau check: the profile must have stabilized by r
  const StableProfile prof = stable_profile(0.3141, 0.5, KernelSpec::plus(spec.d), p, r, tol);
  if (!prof.converged || prof.r_used > r)
    throw ConvergenceError("stable_count: r below the psi plateau");
  const double T = kPi * p.a;
  const double kappa = 0.3141;
  const double delta = 1e-2;
  const Rect strip{kappa - double(r), double(r) - kappa, delta, T - delta};
  auto f = [&](Complex k) { return symmetrized_eval(k, spec, p, tol).value; };
  WindingOptions wo;
  wo.initial_per_edge = 96;
  const WindingResult w = winding_count(f, strip, wo);
  if (!w.conclusive) throw ConvergenceError("stable_count: winding inconclusive on S_r");
  StableCount out;
  out.zeros_minus_poles = w.winding;
  out.r_used = r;
  switch (spec.flavor) {
    case SymFlavor::hat_zeta:
      out.formula_value = 0.0;
      break;
    case SymFlavor::hat_sym:
      out.formula_value = count_formulas(CountFormula::N_hat_inf, {p.a, spec.d, kappa, T, r});
      break;
    case SymFlavor::tilde_zeta:
      out.formula_value = count_formulas(CountFormula::N_tilde_inf, {p.a, spec.d, kappa, T, r});
      break;
    default:
      throw DomainError("stable_count: unsupported flavor");
  }
  return out;
}

ProbeReport conjecture_probe(const SymSpec& spec, const Rect& window, const QParams& p,
                             double tol) {
  ProbeReport report;
  auto f = [&](Complex k) { return symmetrized_eval(k, spec, p, tol * 1e-2).value; };
  LocateOptions lo;
  lo.tol = tol;
  lo.function_id = "symmetrized";
  lo.a = p.a;
  lo.d = spec.d;
  const LocateOutcome found = locate_zeros(f, window, lo);
  // classical anchors: zeta zeros (as i*y), p(k|d) zeros on the imaginary
  // axis, and the pole-attached points +-(1/2 + 2Z_+).
  std::vector<Complex> anchors;
  for (double y : zeta_zero_ordinates(std::max(1.0, window.im_hi + 2.0)))
    anchors.push_back({0.0, y});
  for (double y = 0.5; y < window.im_hi + 2.0; y += 0.25) {
    // p(k|d) zero scan on the imaginary axis by sign change of the imaginary part
    const Complex v1 = normalizer(NormalizerKind::p_factor, {0.0, y}, p, spec.d).value;
    const Complex v2 = normalizer(NormalizerKind::p_factor, {0.0, y + 0.25}, p, spec.d).value;
    if ((v1.imag() < 0.0) != (v2.imag() < 0.0) && std::abs(v1) < 1.0)
      anchors.push_back({0.0, y + 0.125});
  }
  for (double re = 0.5; re <= window.re_hi + 1.0; re += 2.0) {
    anchors.push_back({re, 0.0});
    anchors.push_back({-re, 0.0});
  }
  std::sort(anchors.begin(), anchors.end(),
            [](Complex a, Complex b) { return a.imag() < b.imag(); });
  double gap = 2.0;
  for (size_t i = 1; i < anchors.size(); ++i)
    gap = std::min(gap, std::abs(anchors[i] - anchors[i - 1]));
  const double radius = std::min(0.5, gap / 3.0);
  for (const auto& z : found.zeros) {
    ProbeZero pz;
    pz.record = z;
    if (std::abs(z.location.real()) < 1e-6) {
      pz.classification = ZeroClass::imaginary;
      ++report.n_imaginary;
    } else {
      double best = 1e300;
      Complex best_anchor;
      for (const auto& anc : anchors) {
        const double dist = std::abs(z.location - anc);
        if (dist < best) {
          best = dist;
          best_anchor = anc;
        }
      }
      if (best < radius) {
        pz.classification = ZeroClass::deformation_of_classical;
        pz.anchor = best_anchor;
        pz.im_drift = z.location.imag() - best_anchor.imag();
        ++report.n_classical;
      } else {
        pz.classification = ZeroClass::other;
        ++report.n_other;
      }
    }
    report.zeros.push_back(pz);
  }
  return report;
}

}  // namespace qzeta
