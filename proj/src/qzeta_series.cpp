#include "qzeta/qzeta_series.hpp"

#include <algorithm>
#include <cmath>

namespace qzeta {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kPoleTol = 1e-13;

// Residue weight w(k+j) of the kernel on the sharp contour.
Complex residue_weight(const KernelSpec& kernel, Complex kj, const QParams& p, bool& decays) {
  const Complex u = kernel.d * kj * kj / (4.0 * p.a);
  decays = true;
  switch (kernel.kind) {
    case KernelSpec::Kind::one:
      decays = false;
      return {1.0, 0.0};
    case KernelSpec::Kind::minus:
      return bose_weight(u);
    case KernelSpec::Kind::plus: {
      const Complex den = std::exp(u) + 1.0;
      if (std::abs(den) < kPoleTol)
        throw PoleProximityError("sharp_series: weight pole (exp(d(k+j)^2/4a) = -1)");
      return fermi_weight(u);
    }
    case KernelSpec::Kind::gauss_neg:
      return std::exp(-u);
    case KernelSpec::Kind::gauss_pos:
      decays = false;
      throw DomainError("sharp_series: gauss_pos has no convergent residue series");
    case KernelSpec::Kind::theta: {
      // sum_{n>=1} exp(-n^2 u) (theta-deformation of the minus weight)
      if (u.real() <= 0.0)
        throw DomainError("sharp_series: theta weight requires Re (k+j)^2 > 0");
      Complex s{0.0, 0.0};
      for (int n = 1; n < 400; ++n) {
        if (double(n) * double(n) * u.real() > 700.0) break;
        const Complex t = std::exp(-double(n) * double(n) * u);
        s += t;
        if (std::abs(t) < 1e-18 * (1.0 + std::abs(s))) break;
      }
      return s;
    }
    case KernelSpec::Kind::dirichlet3: {
      if (u.real() > 0.0) {
        const Complex e = std::exp(-u);
        return e / (1.0 + e + e * e);
      }
      const Complex e = std::exp(u);
      return e / (1.0 + e + e * e);
    }
  }
  throw DomainError("sharp_series: unknown kernel");
}

}  // namespace

LogValue sharp_prefactor_log(Complex k, const QParams& p, double tol) {
  const QPochLog lk = qpoch_log(k, p, tol);
  const QPochLog lmk = qpoch_log(-k, p, tol);
  const QPochLog l2k = qpoch_log(2.0 * k, p, tol);
  const QPochLog l1 = qpoch_log(1.0, p, tol);
  if (l2k.exact_zero || l2k.min_factor_abs < kPoleTol || l1.min_factor_abs < kPoleTol)
    throw PoleProximityError("sharp_prefactor: pole of P(k)");
  LogValue r;
  if (lk.exact_zero || lmk.exact_zero) {
    r.exact_zero = true;
    return r;
  }
  r.log = lk.log_value + lmk.log_value - l2k.log_value - l1.log_value;
  r.abs_error_est =
      lk.abs_error_est + lmk.abs_error_est + l2k.abs_error_est + l1.abs_error_est;
  r.work = lk.work + lmk.work + l2k.work + l1.work;
  return r;
}

EvalResult sharp_prefactor(Complex k, const QParams& p, double tol) {
  const QPochLog lk = qpoch_log(k, p, tol);
  const QPochLog lmk = qpoch_log(-k, p, tol);
  const QPochLog l2k = qpoch_log(2.0 * k, p, tol);
  const QPochLog l1 = qpoch_log(1.0, p, tol);
  if (l2k.exact_zero || l2k.min_factor_abs < kPoleTol || l1.min_factor_abs < kPoleTol)
    throw PoleProximityError("sharp_prefactor: pole of P(k)");
  EvalResult r;
  if (lk.exact_zero || lmk.exact_zero) {
    r.value = {0.0, 0.0};
    return r;
  }
  r.value = std::exp(lk.log_value + lmk.log_value - l2k.log_value - l1.log_value);
  r.abs_error_est = std::abs(r.value) * (lk.abs_error_est + lmk.abs_error_est +
                                         l2k.abs_error_est + l1.abs_error_est);
  r.work = lk.work + lmk.work + l2k.work + l1.work;
  return r;
}

EvalResult sharp_series(Complex k, const KernelSpec& kernel, const QParams& p,
                        const SharpOptions& opts) {
  if (kernel.kind == KernelSpec::Kind::one && k.real() >= 0.0)
    throw DomainError(
        "sharp_series: kernel=one diverges for Re k >= 0; use constant_term(trapezoid)");
  const EvalResult pref = sharp_prefactor(k, p, opts.tol);

  const long hard_cap =
      kernel.kind == KernelSpec::Kind::one
          ? long(std::ceil(std::max(64.0, p.a * 40.0 / std::max(0.05, -k.real()))))
          : long(std::ceil(opts.cutoff_c * std::sqrt(p.a * std::max(1.0, kernel.d) / kernel.d))) +
                long(std::ceil(2.0 * std::abs(k.real()) / kernel.d)) + 32;

  // Inner product updated incrementally: O(1) per term.
  // pair_form: I_j *= (1-q^{j+2k-1})(1-q^{-(j+k)}) / ((1-q^{j+k-1})(1-q^j))
  // single_form: J_j = e^{kj/a}(1-q^{j+k})/(1-q^k) prod (1-q^{l+2k-1})/(1-q^l)
  Complex inner{1.0, 0.0};
  const Complex one_minus_qk = qp_one_minus(k, p);
  if (opts.form == SharpForm::single_form && std::abs(one_minus_qk) < kPoleTol)
    throw PoleProximityError("sharp_series: single_form pole at q^k = 1");

  std::vector<Complex> terms;
  terms.reserve(256);
  double scale = 0.0;
  long j = 0;
  int small_run = 0;
  for (; j <= hard_cap; ++j) {
    if (j > 0) {
      const double l = double(j);
      if (opts.form == SharpForm::pair_form) {
        const Complex den = qp_one_minus(l + k - 1.0, p) * qp_one_minus(-l, p);
        if (std::abs(den) < kPoleTol)
          throw PoleProximityError("sharp_series: inner-product denominator vanishes");
        inner *= qp_one_minus(l + 2.0 * k - 1.0, p) * qp_one_minus(-(l + k), p) / den;
      } else {
        const Complex den = qp_one_minus(l, p);
        if (std::abs(den) < kPoleTol)
          throw PoleProximityError("sharp_series: inner-product denominator vanishes");
        inner *= qp_one_minus(l + 2.0 * k - 1.0, p) / den;
      }
    }
    Complex coef = inner;
    if (opts.form == SharpForm::single_form)
      coef *= std::exp(k * double(j) / p.a) * qp_one_minus(double(j) + k, p) / one_minus_qk;
    bool decays = true;
    const Complex term = coef * residue_weight(kernel, k + double(j), p, decays);
    terms.push_back(term);
    const double at = std::abs(term);
    scale = std::max(scale, at);
    if (kernel.kind == KernelSpec::Kind::one) {
      if (at < opts.tol * std::max(scale, 1e-300) * 0.01) break;  // geometric decay, Re k < 0
    } else {
      small_run = (at < opts.tol * std::max(scale, 1e-300) * 0.01) ? small_run + 1 : 0;
      if (small_run >= 3 && double(j) > 2.0 * std::abs(k.real()) / kernel.d + 4.0) break;
    }
  }
  EvalResult r;
  const Complex sum = pairwise_sum(terms);
  r.value = -(p.a * kPi / 2.0) * pref.value * sum;
  const double tail = terms.empty() ? 0.0 : std::abs(terms.back());
  r.abs_error_est = (p.a * kPi / 2.0) *
                    (pref.abs_error_est * std::abs(sum) +
                     std::abs(pref.value) * (2.0 * tail + scale * 1e-15 * double(terms.size())));
  r.work = long(terms.size()) + pref.work;
  return r;
}

EvalResult ct_product(Complex k, const QParams& p, double tol) {
  const QPochLog lk = qpoch_log(k, p, tol);
  const QPochLog lk1 = qpoch_log(k + 1.0, p, tol);
  const QPochLog l2k = qpoch_log(2.0 * k, p, tol);
  const QPochLog l1 = qpoch_log(1.0, p, tol);
  if (l2k.exact_zero || l2k.min_factor_abs < kPoleTol)
    throw PoleProximityError("ct_product: pole where q^{2k+j} = 1");
  EvalResult r;
  if (lk.exact_zero || lk1.exact_zero) return r;  // zero value
  r.value = 2.0 * std::exp(lk.log_value + lk1.log_value - l2k.log_value - l1.log_value);
  r.abs_error_est = std::abs(r.value) *
                    (lk.abs_error_est + lk1.abs_error_est + l2k.abs_error_est + l1.abs_error_est);
  r.work = lk.work + lk1.work + l2k.work + l1.work;
  return r;
}

EvalResult constant_term(Complex k, const QParams& p, CtMethod method, double tol) {
  switch (method) {
    case CtMethod::series:
      if (k.real() >= 0.0)
        throw DomainError("constant_term: series form requires Re k < 0");
      return sharp_series(k, KernelSpec::one(), p, {SharpForm::pair_form, 20.0, tol});
    case CtMethod::product: {
      // C_sharp(k) = -(a pi / 2) * ct_product(k) for Re k < 0
      EvalResult r = ct_product(k, p, tol);
      r.value *= -(p.a * kPi / 2.0);
      r.abs_error_est *= p.a * kPi / 2.0;
      return r;
    }
    case CtMethod::trapezoid: {
      if (k.real() <= 0.0)
        throw DomainError("constant_term: trapezoid CT requires Re k > 0");
      // (1/(pi a i)) int over one period = mean over x = i a t/2, t in (-pi, pi]
      auto f = [&](Complex t) { return delta_kernel(Complex{0.0, 0.5 * p.a} * t, k, p).value; };
      const PathSpec path = PathSpec::period_segment({-kPi, 0.0}, {kPi, 0.0});
      EvalResult r = integrate_path(f, path, tol);
      r.value /= 2.0 * kPi;
      r.abs_error_est /= 2.0 * kPi;
      return r;
    }
  }
  throw DomainError("constant_term: unknown method");
}

EvalResult sharp_gaussian(Complex k, const QParams& p, GaussianMethod method, double tol) {
  if (method == GaussianMethod::series)
    return sharp_series(k, KernelSpec::gauss_neg(1.0), p, {SharpForm::pair_form, 20.0, tol});
  return gaussian_product_chi(k, p, tol).chi;
}

EvalResult rogers_gauss_moment(Complex k, int m, int n, const QParams& p, double tol) {
  if (m == 0 && n == 0) return sharp_gaussian(k, p, GaussianMethod::series, tol);
  const EvalResult pref = sharp_prefactor(k, p, tol);
  const long cap = long(std::ceil(20.0 * std::sqrt(p.a))) +
                   long(std::ceil(2.0 * std::abs(k.real()))) + 32 + 2 * (m + n);
  Complex inner{1.0, 0.0};
  std::vector<Complex> terms;
  double scale = 0.0;
  int small_run = 0;
  for (long j = 0; j <= cap; ++j) {
    if (j > 0) {
      const double l = double(j);
      const Complex den = qp_one_minus(l + k - 1.0, p) * qp_one_minus(-l, p);
      if (std::abs(den) < kPoleTol)
        throw PoleProximityError("rogers_gauss_moment: inner-product denominator vanishes");
      inner *= qp_one_minus(l + 2.0 * k - 1.0, p) * qp_one_minus(-(l + k), p) / den;
    }
    const Complex xj = 0.5 * (k + double(j));
    const Complex pm = rogers_polynomial(m, k, xj, p, tol).value;
    const Complex pn = rogers_polynomial(n, k, xj, p, tol).value;
    const Complex term = inner * pm * pn * std::exp(-(k + double(j)) * (k + double(j)) / (4.0 * p.a));
    terms.push_back(term);
    const double at = std::abs(term);
    scale = std::max(scale, at);
    small_run = (at < tol * std::max(scale, 1e-300) * 0.01) ? small_run + 1 : 0;
    if (small_run >= 3 && double(j) > 2.0 * std::abs(k.real()) + 4.0) break;
  }
  EvalResult r;
  const Complex sum = pairwise_sum(terms);
  r.value = -(p.a * kPi / 2.0) * pref.value * sum;
  r.abs_error_est = (p.a * kPi / 2.0) * (pref.abs_error_est * std::abs(sum) +
                                         std::abs(pref.value) *
                                             (2.0 * std::abs(terms.back()) +
                                              scale * 1e-14 * double(terms.size())));
  r.work = long(terms.size());
  return r;
}

EvalResult ueno_zeta(Complex s, const QParams& p, long terms) {
  if (s.real() <= 0.0) throw DomainError("ueno_zeta: diverges for Re s <= 0");
  std::vector<Complex> vals;
  vals.reserve(size_t(terms));
  for (long n = 1; n <= terms; ++n) {
    // q^{sn} / [n]_q^s, [n]_q = (1-q^n)/(1-q)
    const Complex bracket = qp_one_minus(double(n), p) / (1.0 - p.q);
    vals.push_back(std::exp(-s * double(n) / p.a - s * std::log(bracket)));
  }
  EvalResult r;
  r.value = pairwise_sum(vals);
  // geometric tail: |q^{s n}| ratio q^{Re s}, bracket -> 1/(1-q)
  const double ratio = std::pow(p.q, s.real());
  const double last = std::abs(vals.back());
  r.abs_error_est = (ratio < 1.0 ? last * ratio / (1.0 - ratio) : 1e300) +
                    1e-15 * double(terms);
  r.work = terms;
  return r;
}

EvalResult singular_tilde_zeta(Complex s, Complex u, const QParams& p, const TildeOptions& opts) {
  if (s.real() <= 0.0) throw DomainError("singular_tilde_zeta: Re s must be positive");
  if (u.real() < 0.0 && std::abs(u.imag()) < 1e-14)
    throw DomainError("singular_tilde_zeta: u on the negative real axis is excluded");
  std::vector<Complex> vals;
  vals.reserve(size_t(opts.terms));
  double err = 0.0;
  long work = 0;
  for (long n = 1; n <= opts.terms; ++n) {
    Complex x = std::sqrt(p.a * u * double(n));
    if (opts.sqrt_branch == 1) x = -x;
    try {
      const EvalResult t = delta_kernel(x, -s, p);
      Complex v = t.value;
      if (opts.symmetrized) v = 0.5 * (v + delta_kernel(std::conj(x), -s, p).value);
      vals.push_back(v);
      err += t.abs_error_est;
      work += t.work;
    } catch (const PoleProximityError&) {
      throw PoleProximityError("singular_tilde_zeta: term n = " + std::to_string(n) +
                               " is pole-adjacent (s in S(a) window)");
    }
  }
  EvalResult r;
  r.value = pairwise_sum(vals);
  r.abs_error_est = err + std::abs(vals.back()) * double(opts.terms) * 0.02;  // empirical tail
  r.work = work;
  return r;
}

}  // namespace qzeta
