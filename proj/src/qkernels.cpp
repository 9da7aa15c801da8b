#include "qzeta/qkernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qzeta {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kPoleTol = 1e-13;
}  // namespace

QParams QParams::from_a(double a) {
  if (!(a > 0.0)) throw DomainError("QParams: a must be positive");
  QParams p;
  p.a = a;
  p.q = std::exp(-1.0 / a);
  p.period_p = Complex{0.0, 2.0 * kPi * a};
  p.half_period_T = kPi * a;
  return p;
}

QParams QParams::from_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("QParams: q must lie in (0,1)");
  return from_a(-1.0 / std::log(q));
}

// ---------------------------------------------------------------------------
// q-Pochhammer logarithm
// ---------------------------------------------------------------------------

namespace {

// Reduce Im(c) into (-pi a, pi a]; q^{j+c} is 2*pi*a*i periodic in c.
Complex reduce_period(Complex c, const QParams& p) {
  const double per = 2.0 * kPi * p.a;
  const double n = std::round(c.imag() / per);
  if (n == 0.0) return c;
  return {c.real(), c.imag() - n * per};
}

QPochLog direct_sum(Complex c, const QParams& p, double tol, long j_end) {
  QPochLog r;
  std::vector<Complex> logs;
  logs.reserve(size_t(std::max<long>(j_end, 8)));
  for (long j = 0; j < j_end; ++j) {
    const Complex f = qp_one_minus(double(j) + c, p);
    const double af = std::abs(f);
    if (af == 0.0) {
      r.exact_zero = true;
      r.work = j + 1;
      return r;
    }
    r.min_factor_abs = std::min(r.min_factor_abs, af);
    logs.push_back(std::log(f));
  }
  r.log_value = pairwise_sum(logs);
  r.work = j_end;
  const double tail_u = std::pow(p.q, double(j_end) + c.real());
  r.abs_error_est = tail_u / (1.0 - p.q) + 1e-16 * double(j_end);
  (void)tol;
  return r;
}

// Number of direct terms needed so that q^{j+Re c} < tol*(1-q).
long direct_cutoff(double re_c, const QParams& p, double tol) {
  const double target = std::log(std::max(tol * (1.0 - p.q), 1e-300));
  const long j = long(std::ceil(-re_c + p.a * (-target))) + 2;
  return std::max<long>(j, 4);
}

// Bernoulli numbers B_2..B_12.
constexpr double kB2m[6] = {1.0 / 6.0,  -1.0 / 30.0, 1.0 / 42.0,
                            -1.0 / 30.0, 5.0 / 66.0,  -691.0 / 2730.0};

// g(u) = 1/(e^u - 1); g' = -(g^2 + g).  Derivatives of g are polynomials in
// g, generated by the recursion P_{n+1} = -P_n'(g) (g^2+g).
std::array<std::vector<double>, 11> make_g_deriv_polys() {
  std::array<std::vector<double>, 11> polys;
  polys[0] = {0.0, 1.0};  // g itself
  for (int n = 0; n < 10; ++n) {
    const auto& pn = polys[size_t(n)];
    std::vector<double> dp(pn.size() >= 1 ? pn.size() - 1 : 0, 0.0);
    for (size_t i = 1; i < pn.size(); ++i) dp[i - 1] = pn[i] * double(i);
    std::vector<double> next(dp.size() + 2, 0.0);
    for (size_t i = 0; i < dp.size(); ++i) {
      next[i + 1] -= dp[i];  // * (-g)
      next[i + 2] -= dp[i];  // * (-g^2)
    }
    polys[size_t(n + 1)] = next;
  }
  return polys;
}

Complex eval_poly(const std::vector<double>& poly, Complex g) {
  Complex v{0.0, 0.0};
  for (size_t i = poly.size(); i-- > 0;) v = v * g + poly[i];
  return v;
}

}  // namespace

QPochLog qpoch_log_direct(Complex c, const QParams& p, double tol) {
  const Complex cr = reduce_period(c, p);
  return direct_sum(cr, p, tol, direct_cutoff(cr.real(), p, tol));
}

QPochLog qpoch_log(Complex c, const QParams& p, double tol) {
  const Complex cr = reduce_period(c, p);
  const long j_full = direct_cutoff(cr.real(), p, tol);
  // Euler-Maclaurin tail from j0 with |j0 + c| >= 14: the head is summed
  // directly, the tail costs O(1).  Only worth it when the direct sum is long.
  const double kMargin = 14.0;
  if (j_full <= 320) return direct_sum(cr, p, tol, j_full);

  const long j0 = std::max<long>(0, long(std::ceil(kMargin - cr.real())));
  QPochLog r = direct_sum(cr, p, tol, j0);
  if (r.exact_zero) return r;

  static const auto g_polys = make_g_deriv_polys();
  const Complex u0 = (double(j0) + cr) / p.a;
  const Complex emu = std::exp(-u0);
  // integral: int_{j0}^inf log(1-e^{-(t+c)/a}) dt = -a Li2(e^{-u0})
  Complex tail = -p.a * dilog_unit(emu);
  // + f(j0)/2
  tail += 0.5 * std::log(-cexpm1(-u0));
  // - sum B_2m/(2m)! f^{(2m-1)}(j0),  f^{(n)}(t) = a^{-n} g^{(n-1)}(u)
  const Complex g = emu / (-cexpm1(-u0));  // 1/(e^u0 - 1)
  double fact = 1.0;                       // (2m)!
  double apow = 1.0;                       // a^{2m-1}
  double last_term = 0.0;
  for (int m = 1; m <= 6; ++m) {
    fact *= double(2 * m - 1) * double(2 * m);
    apow *= (m == 1) ? p.a : p.a * p.a;
    const Complex gd = eval_poly(g_polys[size_t(2 * m - 2)], g);
    const Complex term = kB2m[m - 1] / fact * gd / apow;
    tail -= term;
    last_term = std::abs(term);
  }
  r.log_value += tail;
  r.abs_error_est += last_term + 1e-15;
  r.work += 8;
  return r;
}

// ---------------------------------------------------------------------------
// kernels
// ---------------------------------------------------------------------------

namespace {

EvalResult from_logs(std::initializer_list<QPochLog> num, std::initializer_list<QPochLog> den,
                     const char* who) {
  Complex logsum{0.0, 0.0};
  double err = 0.0;
  long work = 0;
  for (const auto& t : num) {
    if (t.exact_zero) return EvalResult{{0.0, 0.0}, 0.0, 1};
    logsum += t.log_value;
    err += t.abs_error_est;
    work += t.work;
  }
  for (const auto& t : den) {
    if (t.exact_zero || t.min_factor_abs < kPoleTol)
      throw PoleProximityError(std::string(who) + ": denominator factor below 1e-13");
    logsum -= t.log_value;
    err += t.abs_error_est;
    work += t.work;
  }
  EvalResult r;
  r.value = std::exp(logsum);
  r.abs_error_est = std::abs(r.value) * err;
  r.work = std::max<long>(work, 1);
  return r;
}

}  // namespace

EvalResult delta_kernel(Complex x, Complex k, const QParams& p, double tol) {
  return from_logs({qpoch_log(2.0 * x, p, tol), qpoch_log(-2.0 * x, p, tol)},
                   {qpoch_log(k + 2.0 * x, p, tol), qpoch_log(k - 2.0 * x, p, tol)},
                   "delta_kernel");
}

namespace {

LogValue log_ratio(std::initializer_list<QPochLog> num, std::initializer_list<QPochLog> den,
                   const char* who) {
  LogValue r;
  for (const auto& t : num) {
    if (t.exact_zero) {
      r.exact_zero = true;
      return r;
    }
    r.log += t.log_value;
    r.abs_error_est += t.abs_error_est;
    r.work += t.work;
  }
  for (const auto& t : den) {
    if (t.exact_zero || t.min_factor_abs < kPoleTol)
      throw PoleProximityError(std::string(who) + ": denominator factor below 1e-13");
    r.log -= t.log_value;
    r.abs_error_est += t.abs_error_est;
    r.work += t.work;
  }
  return r;
}

}  // namespace

LogValue delta_kernel_log(Complex x, Complex k, const QParams& p, double tol) {
  return log_ratio({qpoch_log(2.0 * x, p, tol), qpoch_log(-2.0 * x, p, tol)},
                   {qpoch_log(k + 2.0 * x, p, tol), qpoch_log(k - 2.0 * x, p, tol)},
                   "delta_kernel_log");
}

LogValue normalizer_log(NormalizerKind kind, Complex k, const QParams& p, double tol) {
  switch (kind) {
    case NormalizerKind::identity:
      return {};
    case NormalizerKind::beta:
      return log_ratio({qpoch_log(2.0 * k, p, tol), qpoch_log(1.0, p, tol)},
                       {qpoch_log(k, p, tol), qpoch_log(k + 1.0, p, tol)}, "beta_log");
    case NormalizerKind::gamma_norm:
      return log_ratio({qpoch_log(2.0 * k, p, tol), qpoch_log(1.0, p, tol)},
                       {qpoch_log(k + 0.5, p, tol), qpoch_log(k + 1.0, p, tol)}, "gamma_log");
    case NormalizerKind::sigma:
      return log_ratio({qpoch_log(k + 0.5, p, tol)}, {qpoch_log(1.0, p, tol)}, "sigma_log");
    case NormalizerKind::alpha_norm:
      return log_ratio({qpoch_log(2.0 * k, p, tol), qpoch_log(1.0, p, tol),
                        qpoch_log(1.0, p, tol)},
                       {qpoch_log(k + 0.5, p, tol), qpoch_log(k + 1.0, p, tol),
                        qpoch_log(0.5 * k + 0.25, p, tol)},
                       "alpha_log");
    default:
      throw DomainError("normalizer_log: kind has no log product form");
  }
}

EvalResult mu_kernel(Complex x, Complex k, const QParams& p, double tol) {
  return from_logs({qpoch_log(2.0 * x, p, tol), qpoch_log(1.0 - 2.0 * x, p, tol)},
                   {qpoch_log(k + 2.0 * x, p, tol), qpoch_log(k + 1.0 - 2.0 * x, p, tol)},
                   "mu_kernel");
}

EvalResult normalizer(NormalizerKind kind, Complex k, const QParams& p, double d, double tol) {
  switch (kind) {
    case NormalizerKind::identity: {
      EvalResult r;
      r.value = {1.0, 0.0};
      return r;
    }
    case NormalizerKind::beta:
      return from_logs({qpoch_log(2.0 * k, p, tol), qpoch_log(1.0, p, tol)},
                       {qpoch_log(k, p, tol), qpoch_log(k + 1.0, p, tol)}, "beta");
    case NormalizerKind::gamma_norm:
      return from_logs({qpoch_log(2.0 * k, p, tol), qpoch_log(1.0, p, tol)},
                       {qpoch_log(k + 0.5, p, tol), qpoch_log(k + 1.0, p, tol)}, "gamma_norm");
    case NormalizerKind::sigma:
      return from_logs({qpoch_log(k + 0.5, p, tol)}, {qpoch_log(1.0, p, tol)}, "sigma");
    case NormalizerKind::alpha_norm:
      return from_logs({qpoch_log(2.0 * k, p, tol), qpoch_log(1.0, p, tol),
                        qpoch_log(1.0, p, tol)},
                       {qpoch_log(k + 0.5, p, tol), qpoch_log(k + 1.0, p, tol),
                        qpoch_log(0.5 * k + 0.25, p, tol)},
                       "alpha_norm");
    case NormalizerKind::p_factor: {
      const Complex lp = std::pow(Complex{d, 0.0}, -0.5 - k) * (1.0 - std::pow(2.0, 0.5 - k));
      const Complex lm = std::pow(Complex{d, 0.0}, -0.5 + k) * (1.0 - std::pow(2.0, 0.5 + k));
      EvalResult r;
      r.value = lp - lm;
      r.abs_error_est = 4e-16 * (std::abs(lp) + std::abs(lm));
      return r;
    }
  }
  throw DomainError("normalizer: unknown kind");
}

GaussianChi gaussian_product_chi(Complex k, const QParams& p, double tol) {
  GaussianChi out;
  const double a = p.a;
  // phi, q-form: -(sqrt(pi a)/2) q^{3k^2/4} (q^{k/2}-q^{-k/2}) *
  //   prod_{j>=1} (1-q^{j/2})/(1-q^j)^2 *
  //   prod_{j>=1} (1-q^{j-k})(1-q^{j+k})(1+q^{j/2-1/4+k/2})(1+q^{j/2-1/4-k/2})
  {
    // half-step products are plain q-Pochhammers in sqrt(q); (1+u) ones flip sign of u.
    const QParams ph = QParams::from_a(2.0 * a);  // q_h = q^{1/2}
    Complex logv = qpoch_log(1.0, ph, tol).log_value            // prod (1-q^{j/2}), j>=1
                   - 2.0 * qpoch_log(1.0, p, tol).log_value;    // / prod (1-q^j)^2
    logv += qpoch_log(1.0 - k, p, tol).log_value + qpoch_log(1.0 + k, p, tol).log_value;
    // (1+q^{j/2-1/4+-k/2}) = (1-z q_h^{j}) with z = -q^{1/4 -... }: sum logs directly
    auto plus_prod = [&](Complex c0) {
      // log prod_{j>=1} (1 + q^{j/2 + c0}) ; terms decay with ratio sqrt(q)
      Complex s{0.0, 0.0};
      const double rq = std::sqrt(p.q);
      long j = 1;
      const double stop = tol * (1.0 - rq);
      for (; j < 1000000; ++j) {
        const Complex u = qpow(0.5 * double(j) + c0, p);
        const Complex lf = std::log(1.0 + u);
        s += lf;
        if (std::abs(lf) <= stop) break;
      }
      return s;
    };
    logv += plus_prod(-0.25 + 0.5 * k) + plus_prod(-0.25 - 0.5 * k);
    const Complex pref = -0.5 * std::sqrt(kPi * a) * qpow(0.75 * k * k, p) *
                         (qpow(0.5 * k, p) - qpow(-0.5 * k, p));
    out.phi_qform = pref * std::exp(logv);
  }
  // phi, Q-form with Q = exp(-8 a pi^2): theta-dual products, negligible past
  // the first terms for a >~ 1.
  {
    const double logQh = -4.0 * a * kPi * kPi;  // log Q^{1/2}
    Complex v = std::sin(kPi * k);
    const Complex e2 = std::exp(Complex{0.0, 2.0 * kPi} * k);
    const Complex e4 = e2 * e2;
    for (int j = 1; j < 64; ++j) {
      const double Qh_j = std::exp(logQh * double(j));        // Q^{j/2}
      const double Q_j = std::exp(2.0 * logQh * double(j));   // Q^j
      const double Q_odd = std::exp(2.0 * logQh * (2.0 * double(j) - 1.0));  // Q^{2j-1}
      if (Qh_j * std::max({1.0, std::abs(e2), std::abs(e4)}) < 1e-18) break;
      v *= (1.0 + Qh_j) / (1.0 - Qh_j);
      v *= (1.0 - e2 * Q_j) * (1.0 - Q_j / e2);
      v *= (1.0 - e4 * Q_odd) * (1.0 - Q_odd / e4);
    }
    out.phi_Qform = v;
  }
  // chi = phi sqrt(pi a) e^{k(k+1)/(2a)} prod (1-q^{j+k})/(1-q^{j+2k})
  const QPochLog lk = qpoch_log(k, p, tol);
  const QPochLog l2k = qpoch_log(2.0 * k, p, tol);
  if (l2k.exact_zero || l2k.min_factor_abs < kPoleTol)
    throw PoleProximityError("gaussian_product_chi: pole of the closed product");
  EvalResult chi;
  chi.value = out.phi_qform * std::sqrt(kPi * a) * std::exp(k * (k + 1.0) / (2.0 * a)) *
              std::exp(lk.log_value - l2k.log_value);
  chi.abs_error_est = std::abs(chi.value) * (lk.abs_error_est + l2k.abs_error_est + 1e-14);
  chi.work = lk.work + l2k.work;
  out.chi = chi;
  return out;
}

// ---------------------------------------------------------------------------
// Rogers polynomials
// ---------------------------------------------------------------------------

EvalResult ct_pairing(const std::function<Complex(Complex)>& f,
                      const std::function<Complex(Complex)>& g, Complex k, const QParams& p,
                      double tol) {
  auto integrand = [&](Complex u) {
    const Complex x = Complex{0.0, p.a} * u;
    return f(x) * g(x) * delta_kernel(x, k, p).value;
  };
  // mean over u in (-pi, pi], trapezoid with doubling
  long n = 128;
  auto eval = [&](long nn) {
    std::vector<Complex> vals(static_cast<size_t>(nn));
    for (long m = 0; m < nn; ++m) {
      const double u = -kPi + 2.0 * kPi * (double(m) + 0.5) / double(nn);
      vals[size_t(m)] = integrand(Complex{u, 0.0});
    }
    return pairwise_sum(vals) / double(nn);
  };
  Complex prev = eval(n);
  for (int it = 0; it < 10; ++it) {
    n *= 2;
    const Complex cur = eval(n);
    if (std::abs(cur - prev) < tol * std::max(1.0, std::abs(cur))) {
      EvalResult r;
      r.value = cur;
      r.abs_error_est = std::abs(cur - prev);
      r.work = 2 * n;
      return r;
    }
    prev = cur;
  }
  throw ConvergenceError("ct_pairing: trapezoid rule did not converge");
}

namespace {

// e_j(x) = q^{jx} + q^{-jx} (e_0 = 1): the even Laurent basis.
Complex basis_e(int j, Complex x, const QParams& p) {
  if (j == 0) return {1.0, 0.0};
  return qpow(double(j) * x, p) + qpow(-double(j) * x, p);
}

// Coefficients of p_m in the basis e_0..e_m, built by Gram-Schmidt against
// the CT pairing.  Rows 0..2 are the closed forms.
std::vector<std::vector<Complex>> rogers_coeffs(int m_max, Complex k, const QParams& p,
                                                double tol) {
  std::vector<std::vector<Complex>> c(size_t(m_max) + 1);
  c[0] = {Complex{1.0, 0.0}};
  if (m_max >= 1) c[1] = {Complex{0.0, 0.0}, Complex{1.0, 0.0}};
  if (m_max >= 2) {
    const Complex qk = qpow(k, p);
    const Complex den = 1.0 - qpow(k + 1.0, p);
    if (std::abs(den) < kPoleTol)
      throw PoleProximityError("rogers_polynomial: k + 1 hits the excluded lattice");
    c[2] = {(1.0 - qk) * (1.0 + p.q) / den, Complex{0.0, 0.0}, Complex{1.0, 0.0}};
  }
  for (int m = 3; m <= m_max; ++m) {
    auto eval_with = [&](const std::vector<Complex>& coef) {
      return [coef, &p](Complex x) {
        Complex v{0.0, 0.0};
        for (size_t j = 0; j < coef.size(); ++j) v += coef[j] * basis_e(int(j), x, p);
        return v;
      };
    };
    std::vector<Complex> cm(size_t(m) + 1, Complex{0.0, 0.0});
    cm[size_t(m)] = 1.0;
    auto em = [m, &p](Complex x) { return basis_e(m, x, p); };
    for (int l = m - 2; l >= 0; l -= 2) {  // parity: only same-parity overlaps
      auto pl = eval_with(c[size_t(l)]);
      const Complex num = ct_pairing(em, pl, k, p, tol).value;
      const Complex den = ct_pairing(pl, pl, k, p, tol).value;
      if (std::abs(den) < 1e-250)
        throw PoleProximityError("rogers_polynomial: degenerate pairing norm");
      const Complex coef = -num / den;
      for (size_t j = 0; j < c[size_t(l)].size(); ++j) cm[j] += coef * c[size_t(l)][j];
    }
    c[size_t(m)] = cm;
  }
  return c;
}

}  // namespace

EvalResult rogers_polynomial(int m, Complex k, Complex x, const QParams& p, double tol) {
  if (m < 0) throw DomainError("rogers_polynomial: m must be nonnegative");
  for (int j = 1; j < m; ++j) {
    const Complex r = reduce_period(k + double(j), p);
    if (std::abs(r) < 1e-9)
      throw PoleProximityError("rogers_polynomial: k in excluded set {-1..-m+1} mod 2 pi a i Z");
  }
  const auto coeffs = rogers_coeffs(m, k, p, tol);
  EvalResult r;
  for (size_t j = 0; j < coeffs[size_t(m)].size(); ++j)
    r.value += coeffs[size_t(m)][j] * basis_e(int(j), x, p);
  r.abs_error_est = 1e-13 * std::abs(r.value) + (m >= 3 ? tol : 0.0);
  return r;
}

// ---------------------------------------------------------------------------
// pole lattices
// ---------------------------------------------------------------------------

Complex xi_point(int l, const QParams& p, double d, bool minus_kernel) {
  const double n = minus_kernel ? double(l) : double(2 * l + 1);
  return std::sqrt(Complex{0.0, n * kPi * p.a / d});
}

namespace {

void push_translates(std::vector<PolePoint>& out, Complex gen, int order, const Window& w,
                     const QParams& p) {
  // gen - n + 2 pi a i m inside w
  const double per = 2.0 * kPi * p.a;
  if (gen.real() < w.re_lo) return;
  const int n_lo = std::max(0, int(std::ceil(gen.real() - w.re_hi)));
  const int n_hi = int(std::floor(gen.real() - w.re_lo));
  for (int n = n_lo; n <= n_hi; ++n) {
    const double re = gen.real() - double(n);
    const double m_lo = std::ceil((w.im_lo - gen.imag()) / per);
    const double m_hi = std::floor((w.im_hi - gen.imag()) / per);
    for (double m = m_lo; m <= m_hi; ++m)
      out.push_back({Complex{re, gen.imag() + m * per}, order});
  }
}

}  // namespace

std::vector<PolePoint> pole_lattice(const PoleFamily& family, const Window& window) {
  std::vector<PolePoint> out;
  const QParams& p = family.params;
  const double per = 2.0 * kPi * p.a;
  switch (family.kind) {
    case PoleFamily::Kind::Pi: {
      // {-Z_+/2 + pi a i Z} \ {-Z_+ + 2 pi a i Z}
      const int h_lo = std::max(0, int(std::ceil(-2.0 * window.re_hi)));
      const int h_hi = int(std::floor(-2.0 * window.re_lo));
      for (int h = h_lo; h <= h_hi; ++h) {
        const double re = -0.5 * double(h);
        const double m_lo = std::ceil(window.im_lo / (0.5 * per));
        const double m_hi = std::floor(window.im_hi / (0.5 * per));
        for (double m = m_lo; m <= m_hi; ++m) {
          const bool integer_re = (h % 2 == 0);
          const bool even_period = (std::fmod(std::abs(m), 2.0) < 0.5);
          if (integer_re && even_period) continue;  // excluded sublattice
          out.push_back({Complex{re, m * 0.5 * per}, 1});
        }
      }
      break;
    }
    case PoleFamily::Kind::Lambda:
    case PoleFamily::Kind::LambdaPlus: {
      const double sgn = family.kind == PoleFamily::Kind::Lambda ? -1.0 : 1.0;
      for (int l = 0; l < 100000; ++l) {
        const Complex xi = xi_point(l, p, family.d);
        Complex g = sgn * 2.0 * xi - double(family.shift_r);
        if (sgn * 2.0 * xi.real() - family.shift_r < window.re_lo - 1.0 && sgn < 0) break;
        if (family.kind == PoleFamily::Kind::LambdaPlus && l > 8 &&
            2.0 * std::abs(xi) > std::abs(window.re_hi) + std::abs(window.re_lo) +
                                     std::abs(window.im_hi) + std::abs(window.im_lo) + per)
          break;
        push_translates(out, g, 1, window, p);
        push_translates(out, std::conj(sgn * 2.0 * xi) - double(family.shift_r), 1, window, p);
        if (l > 100 && std::abs(xi) > 1e6) break;
      }
      break;
    }
    case PoleFamily::Kind::Sa_singular: {
      // poles of delta_{-s}(sqrt(a u n)) terms: s in {j +- 2 sqrt(a u n) + 2 pi a i Z}
      // (u = i here; generic u callers use distance_to_family with their x_n)
      for (int n = 1; n < 4000; ++n) {
        const Complex x = std::sqrt(Complex{0.0, p.a * double(n)});
        if (2.0 * std::abs(x) - per > std::abs(window.re_hi) + std::abs(window.re_lo) +
                                          std::abs(window.im_hi) + std::abs(window.im_lo) + 2.0)
          break;
        for (double s : {1.0, -1.0}) {
          const Complex g = s * 2.0 * x;
          // translated by +Z_+ here: s = j +- 2x
          const int j_lo = std::max(0, int(std::ceil(window.re_lo - g.real())));
          const int j_hi = int(std::floor(window.re_hi - g.real()));
          for (int j = j_lo; j <= j_hi; ++j) {
            const double m_lo = std::ceil((window.im_lo - g.imag()) / per);
            const double m_hi = std::floor((window.im_hi - g.imag()) / per);
            for (double m = m_lo; m <= m_hi; ++m)
              out.push_back({Complex{g.real() + j, g.imag() + m * per}, 1});
          }
        }
      }
      break;
    }
    case PoleFamily::Kind::sharp_strip_poles: {
      // {-1/2 - Z_+} inside the strip (plus-kernel sharp zeta)
      for (int n = 0; n < 1000000; ++n) {
        const double re = -0.5 - double(n);
        if (re < window.re_lo) break;
        if (re <= window.re_hi && 0.0 >= window.im_lo && 0.0 <= window.im_hi)
          out.push_back({Complex{re, 0.0}, 1});
      }
      break;
    }
    case PoleFamily::Kind::srepm_K: {
      // anchors of the translated hooks 2C^eps_pm - Z_+ + 2 pi a i Z (corner points);
      // use distance_to_srepm for the actual set membership test.
      const int n_lo = std::max(0, int(std::ceil(-window.re_hi)));
      const int n_hi = int(std::floor(-window.re_lo + 1.0));
      for (int n = n_lo; n <= n_hi; ++n) {
        const double m_lo = std::ceil((window.im_lo - 2.0 * family.epsilon) / per);
        const double m_hi = std::floor((window.im_hi + 2.0 * family.epsilon) / per);
        for (double m = m_lo; m <= m_hi; ++m) {
          for (double s : {1.0, -1.0}) {
            const Complex corner{-double(n), s * 2.0 * family.epsilon + m * per};
            if (window.contains(corner)) out.push_back({corner, 1});
          }
        }
      }
      break;
    }
  }
  std::sort(out.begin(), out.end(), [](const PolePoint& x, const PolePoint& y) {
    if (x.location.real() != y.location.real()) return x.location.real() < y.location.real();
    return x.location.imag() < y.location.imag();
  });
  return out;
}

namespace {

double dist_point_segment(Complex z, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(z - a);
  double t = ((z - a) * std::conj(ab)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

double dist_point_hray(Complex z, Complex from) {
  // horizontal ray from 'from' toward +infinity
  if (z.real() >= from.real()) return std::abs(z.imag() - from.imag());
  return std::abs(z - from);
}

}  // namespace

double distance_to_srepm(Complex k, double eps, int sign, const QParams& p) {
  // K^eps_pm = {2C - Z_+ + 2 pi a i Z} u {-2C - Z_+ + 2 pi a i Z},
  // C from 0 to sign*eps*i then to inf + sign*eps*i; doubling C scales it.
  const double per = 2.0 * kPi * p.a;
  const double se = 2.0 * eps * double(sign);
  double best = 1e300;
  const double m0 = std::round(k.imag() / per);
  for (double m = m0 - 1; m <= m0 + 1; ++m) {
    const Complex kk{k.real(), k.imag() - m * per};
    // +2C branch: segment [ -n, -n + se*i ] and ray from -n + se*i rightward... the
    // doubled hook anchored at -n covers [ -n, -n + 2*eps*sign*i ] then horizontal.
    for (int n = 0; n < int(std::ceil(-k.real())) + 3 + 2; ++n) {
      const Complex anchor{-double(n), 0.0};
      best = std::min(best, dist_point_segment(kk, anchor, anchor + Complex{0.0, se}));
      best = std::min(best, dist_point_hray(kk, anchor + Complex{0.0, se}));
      // -2C branch: mirrored, goes to -infinity; equivalently reflect through anchor
      const Complex rk = 2.0 * anchor - kk;
      best = std::min(best, dist_point_segment(rk, anchor, anchor + Complex{0.0, se}));
      best = std::min(best, dist_point_hray(rk, anchor + Complex{0.0, se}));
    }
  }
  return best;
}

double distance_to_family(Complex k, const PoleFamily& family, double pad) {
  const Window w{k.real() - pad, k.real() + pad, k.imag() - pad, k.imag() + pad};
  double best = 1e300;
  for (const auto& pt : pole_lattice(family, w)) best = std::min(best, std::abs(k - pt.location));
  return best;
}

}  // namespace qzeta
