#include "qzeta/qzeta_contours.hpp"

#include <algorithm>
#include <cmath>

#include "qzeta/qzeta_series.hpp"

namespace qzeta {

namespace {
constexpr double kPi = 3.14159265358979323846;

// theta sum S(y) = sum_{n>=1} exp(-c n^2 y^2), c = d/a, via the functional
// equation when the direct sum is slow.
Complex theta_sum_imag(double y, double d, const QParams& p) {
  const double x = d * y * y / (kPi * p.a);
  if (x >= 1.0) {
    Complex s{0.0, 0.0};
    for (int n = 1; n < 200; ++n) {
      const double t = std::exp(-d * double(n) * double(n) * y * y / p.a);
      s += t;
      if (t < 1e-18) break;
    }
    return s;
  }
  // sum_{n in Z} e^{-pi n^2 x} = x^{-1/2} sum_{n in Z} e^{-pi n^2 / x}
  double dual = 1.0;
  for (int n = 1; n < 200; ++n) {
    const double t = std::exp(-kPi * double(n) * double(n) / x);
    dual += 2.0 * t;
    if (t < 1e-18) break;
  }
  return Complex{0.5 * (dual / std::sqrt(x) - 1.0), 0.0};
}

// Kernel on imaginary-type contours, evaluated at x (normally x = i y or on a
// nearby vertical line): the decaying convention (exp(-d x^2/a) -+ 1)^{-1}.
Complex kernel_imag(const KernelSpec& kernel, Complex x, const QParams& p) {
  const Complex u = -kernel.d * x * x / p.a;
  switch (kernel.kind) {
    case KernelSpec::Kind::minus:
      return bose_weight(u);
    case KernelSpec::Kind::plus:
      return fermi_weight(u);
    case KernelSpec::Kind::gauss_pos:
      return std::exp(kernel.d * x * x / p.a);
    case KernelSpec::Kind::dirichlet3:
      return 1.0 / (std::exp(u) + 1.0 + std::exp(-u));
    case KernelSpec::Kind::theta: {
      if (std::abs(x.real()) < 1e-14) return theta_sum_imag(x.imag(), kernel.d, p);
      Complex s{0.0, 0.0};
      for (int n = 1; n < 400; ++n) {
        const Complex t = std::exp(kernel.d * double(n) * double(n) * x * x / p.a);
        s += t;
        if (std::abs(t) < 1e-18) break;
      }
      return s;
    }
    default:
      throw DomainError("imaginary evaluator: unsupported kernel kind");
  }
}

// Kernel on real-type contours: (exp(d x^2/a) -+ 1)^{-1} / Gaussian.
Complex kernel_real(const KernelSpec& kernel, Complex x, const QParams& p) {
  const Complex u = kernel.d * x * x / p.a;
  switch (kernel.kind) {
    case KernelSpec::Kind::minus:
      return bose_weight(u);
    case KernelSpec::Kind::plus:
      return fermi_weight(u);
    case KernelSpec::Kind::gauss_neg:
      return std::exp(-u);
    case KernelSpec::Kind::dirichlet3:
      return 1.0 / (std::exp(u) + 1.0 + std::exp(-u));
    default:
      throw DomainError("real evaluator: unsupported kernel kind");
  }
}

double imag_decay_scale(Complex k, const KernelSpec& kernel, const QParams& p, double tol) {
  const double L = -std::log(std::max(tol * 1e-4, 1e-300));
  return std::sqrt(p.a * L / kernel.d) + 2.0 * std::abs(k.real()) + 2.0;
}

double real_decay_scale(Complex k, const KernelSpec& kernel, const QParams& p, double tol) {
  const double L = -std::log(std::max(tol * 1e-4, 1e-300));
  return std::sqrt(p.a * L / kernel.d) + 2.0 * std::abs(k.real()) / kernel.d + 4.0;
}

}  // namespace

EvalResult imaginary_integral(Complex k, const KernelSpec& kernel, const QParams& p,
                              double tol) {
  if (k.real() <= 0.0)
    throw DomainError("imaginary_integral: requires Re k > 0 (use a continuation)");
  if (kernel.kind == KernelSpec::Kind::gauss_neg || kernel.kind == KernelSpec::Kind::one)
    throw DomainError("imaginary_integral: kernel diverges along i R_+");
  auto f = [&](Complex y) {
    const Complex x = Complex{0.0, 1.0} * y;
    return kernel_imag(kernel, x, p) * delta_kernel(x, k, p).value;
  };
  const PathSpec path = PathSpec::ray({0.0, 0.0}, {1.0, 0.0}, imag_decay_scale(k, kernel, p, tol));
  return integrate_path(f, path, tol);
}

namespace {

double dist_segment(Complex z, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(z - a);
  const double t = std::clamp(((z - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

double dist_hray(Complex z, Complex from) {
  if (z.real() >= from.real()) return std::abs(z.imag() - from.imag());
  return std::abs(z - from);
}

// Distance from z to the hook 0 -> sgn*eps*i -> inf + sgn*eps*i.
double dist_hook(Complex z, double eps, double sgn) {
  const Complex corner{0.0, sgn * eps};
  return std::min(dist_segment(z, {0.0, 0.0}, corner), dist_hray(z, corner));
}

// Distance from the delta_k x-pole lattice +-(j+k)/2 + pi a i Z to the
// hook contours at height +-eps.
double delta_pole_path_distance(Complex k, double eps, double x_max, const QParams& p) {
  double best = 1e300;
  const double per = kPi * p.a;
  const long j_max = long(2.0 * x_max + std::abs(k.real())) + 2;
  for (long j = 0; j <= j_max; ++j) {
    for (double s : {1.0, -1.0}) {
      const Complex pole0 = s * (double(j) + k) * 0.5;
      for (double m : {std::floor(pole0.imag() / per), std::ceil(pole0.imag() / per)}) {
        const Complex pole{pole0.real(), pole0.imag() - m * per};
        best = std::min({best, dist_hook(pole, eps, 1.0), dist_hook(pole, eps, -1.0)});
      }
    }
  }
  return best;
}

}  // namespace

double flat_epsilon(const QParams& p, double d) {
  return std::min(std::sqrt(kPi * p.a / (2.0 * d)), 0.25);
}

double sharp_epsilon(const QParams& p, double d) {
  return std::min(std::sqrt(kPi * p.a / (2.0 * d)), kPi * p.a / 2.0);
}

EvalResult real_contour_eval(Complex k, RealContourWhich which, const KernelSpec& kernel,
                             double epsilon, const QParams& p, double tol) {
  const double L = real_decay_scale(k, kernel, p, tol);
  if (delta_pole_path_distance(k, epsilon, L, p) < 1e-3)
    throw PoleProximityError("real_contour_eval: delta_k pole within 1e-3 of the contour");
  auto integrand = [&](Complex x) {
    return kernel_real(kernel, x, p) * delta_kernel(x, k, p).value;
  };
  auto hook = [&](double sgn, double& err, long& work) {
    // 0 -> sgn*eps*i -> inf + sgn*eps*i
    const Complex ei{0.0, sgn * epsilon};
    EvalResult leg1 = integrate_path(integrand, PathSpec::segment({0.0, 0.0}, ei), tol);
    EvalResult leg2 = integrate_path(integrand, PathSpec::ray(ei, {1.0, 0.0}, L), tol);
    err += leg1.abs_error_est + leg2.abs_error_est;
    work += leg1.work + leg2.work;
    return leg1.value + leg2.value;
  };
  EvalResult r;
  double err = 0.0;
  long work = 0;
  switch (which) {
    case RealContourWhich::Zplus_path:
      r.value = hook(1.0, err, work);
      break;
    case RealContourWhich::Zminus_path:
      r.value = hook(-1.0, err, work);
      break;
    case RealContourWhich::re_combination:
      r.value = 0.5 * (hook(-1.0, err, work) + hook(1.0, err, work));
      break;
    case RealContourWhich::sharp_combination:
      r.value = (hook(-1.0, err, work) - hook(1.0, err, work)) / Complex{0.0, 2.0};
      break;
  }
  r.abs_error_est = err;
  r.work = std::max<long>(work, 1);
  return r;
}

EvalResult z_pi_term(int n, Complex k, const KernelSpec& kernel, const QParams& p, double tol) {
  if (kernel.kind != KernelSpec::Kind::plus && kernel.kind != KernelSpec::Kind::minus)
    throw DomainError("z_pi_term: plus or minus kernels only");
  const EvalResult pref = sharp_prefactor(k, p, tol);
  Complex inner{1.0, 0.0};
  for (int l = 1; l <= n; ++l) {
    const Complex den = qp_one_minus(double(l) + k - 1.0, p) * qp_one_minus(-double(l), p);
    if (std::abs(den) < 1e-13)
      throw PoleProximityError("z_pi_term: inner-product denominator vanishes");
    inner *= qp_one_minus(double(l) + 2.0 * k - 1.0, p) * qp_one_minus(-(double(l) + k), p) / den;
  }
  // adaptive m-sum: weights (exp(-d (k+n+2 pi a i m)^2 / 4a) -+ 1)^{-1}
  const Complex per{0.0, 2.0 * kPi * p.a};
  auto weight = [&](int m) {
    const Complex z = k + double(n) + per * double(m);
    const Complex u = -kernel.d * z * z / (4.0 * p.a);
    return kernel.kind == KernelSpec::Kind::plus ? fermi_weight(u) : bose_weight(u);
  };
  Complex msum = weight(0);
  const int m_floor = 3 + int(std::ceil(std::abs(k.real() + double(n)) / (2.0 * kPi * p.a)));
  double audit = 0.0;
  for (int m = 1; m <= m_floor + 24; ++m) {
    const Complex t = weight(m) + weight(-m);
    msum += t;
    audit = std::abs(t);
    if (m >= m_floor && audit < tol * std::max(1.0, std::abs(msum))) break;
  }
  EvalResult r;
  r.value = (p.a * kPi / 2.0) * pref.value * inner * msum;
  r.abs_error_est = (p.a * kPi / 2.0) *
                    (pref.abs_error_est * std::abs(inner * msum) +
                     std::abs(pref.value * inner) * (audit + 1e-15 * std::abs(msum)));
  r.work = pref.work + n + 1;
  return r;
}

EvalResult z_lambda_term(int l, Complex k, const KernelSpec& kernel, const QParams& p,
                         double tol) {
  const bool minus = kernel.kind == KernelSpec::Kind::minus;
  if (minus && l < 1) throw DomainError("z_lambda_term: minus-kernel lattice starts at l = 1");
  const Complex xi = xi_point(l, p, kernel.d, minus);
  const EvalResult d1 = delta_kernel(xi, k, p, tol);
  const EvalResult d2 = delta_kernel(std::conj(xi), k, p, tol);
  EvalResult r;
  r.value = (p.a * kPi / (2.0 * kernel.d)) *
            (d1.value / xi + d2.value / std::conj(xi));
  r.abs_error_est = (p.a * kPi / (2.0 * kernel.d)) *
                    (d1.abs_error_est + d2.abs_error_est) / std::abs(xi);
  r.work = d1.work + d2.work;
  return r;
}

EvalResult flat_continuation(Complex k, const KernelSpec& kernel, const QParams& p, double tol) {
  if (kernel.kind != KernelSpec::Kind::plus)
    throw DomainError("flat_continuation: plus kernel only");
  const double eps = flat_epsilon(p, kernel.d);
  if (!(k.real() > -2.0 * eps && k.real() < 2.0 * eps))
    throw DomainError("flat_continuation: k outside the strip |Re k| < 2 eps");
  {
    // poles at pi a i + 2 pi a i Z from the prefactor of z^pi_0
    const double per = 2.0 * kPi * p.a;
    const double m = std::round((k.imag() - kPi * p.a) / per);
    if (std::abs(k - Complex{0.0, kPi * p.a + m * per}) < 1e-8)
      throw PoleProximityError("flat_continuation: pole at pi a i mod 2 pi a i");
  }
  auto f = [&](Complex x) { return kernel_imag(kernel, x, p) * delta_kernel(x, k, p).value; };
  const double L = imag_decay_scale(k, kernel, p, tol) + eps;
  EvalResult line = integrate_path(f, PathSpec::imaginary_axis_shifted(eps, L), tol);
  line.value /= Complex{0.0, 2.0};
  const EvalResult z0 = z_pi_term(0, k, kernel, p, tol);
  EvalResult r;
  r.value = line.value + z0.value;
  r.abs_error_est = line.abs_error_est + z0.abs_error_est;
  r.work = line.work + z0.work;
  return r;
}

ScaledValue neg_continuation_scaled(Complex k, const KernelSpec& kernel, const QParams& p,
                                    int r, double tol) {
  if (kernel.kind != KernelSpec::Kind::plus && kernel.kind != KernelSpec::Kind::minus)
    throw DomainError("neg_continuation: plus or minus kernels only");
  if (k.real() >= 0.0) throw DomainError("neg_continuation: requires Re k < 0");
  ScaledValue out;
  const LogValue pref = sharp_prefactor_log(k, p, tol);
  // Pole-front sum, tracked in log scale: the prefactor exponent and the
  // inner-product growth cancel only in the product, which overflows double
  // for Re k below about -40.
  std::vector<Complex> phases;   // msum * unit-phase of the inner product
  std::vector<double> logmags;   // Re(log P) + log|inner|
  double audit_max = 0.0;
  long work = pref.work;
  {
    const Complex per{0.0, 2.0 * kPi * p.a};
    Complex inner_phase{1.0, 0.0};
    double inner_logmag = 0.0;
    // terms peak near j = -Re k and decay quadratically just past it
    const long cap = long(std::ceil(-k.real())) +
                     long(std::ceil(std::sqrt(2.0 * p.a * (-std::log(tol) + 12.0)))) +
                     long(std::ceil(p.a * 45.0 / std::max(0.05, -k.real()))) + 4 * r + 64;
    int small_run = 0;
    double max_logmag = -1e300;
    for (long j = 0; j <= cap; ++j) {
      if (j > 0) {
        const Complex den = qp_one_minus(double(j) + k - 1.0, p) * qp_one_minus(-double(j), p);
        if (std::abs(den) < 1e-13)
          throw PoleProximityError("neg_continuation: inner-product denominator vanishes");
        const Complex ratio = qp_one_minus(double(j) + 2.0 * k - 1.0, p) *
                              qp_one_minus(-(double(j) + k), p) / den;
        inner_logmag += std::log(std::abs(ratio));
        inner_phase *= ratio / std::abs(ratio);
      }
      auto weight = [&](int m) {
        const Complex z = k + double(j) + per * double(m);
        const Complex u = -kernel.d * z * z / (4.0 * p.a);
        return kernel.kind == KernelSpec::Kind::plus ? fermi_weight(u) : bose_weight(u);
      };
      Complex msum = weight(0);
      const int m_floor =
          3 + int(std::ceil(std::abs(k.real() + double(j)) / (2.0 * kPi * p.a)));
      for (int m = 1; m <= m_floor + 24; ++m) {
        const Complex t = weight(m) + weight(-m);
        msum += t;
        audit_max = std::max(audit_max, std::abs(t));
        if (m >= m_floor && std::abs(t) < tol * std::max(1.0, std::abs(msum))) break;
      }
      const double sign = (double(j) - double(r) + 0.1) > 0.0 ? 1.0 : -1.0;
      const double am = std::max(std::abs(msum), 1e-300);
      phases.push_back(sign * inner_phase * (msum / am));
      const double lm = inner_logmag + std::log(am);
      logmags.push_back(lm);
      max_logmag = std::max(max_logmag, lm);
      ++work;
      small_run = (lm < max_logmag + std::log(tol) - 5.0) ? small_run + 1 : 0;
      if (small_run >= 3 && j > r) break;
    }
    if (logmags.back() > max_logmag + std::log(tol))
      throw ConvergenceError("neg_continuation: pole-front tail estimate stalled");
    out.log_scale = pref.log.real() + max_logmag;
    const Complex pref_phase = std::exp(Complex{0.0, pref.log.imag()});
    std::vector<Complex> scaled(phases.size());
    for (size_t i = 0; i < phases.size(); ++i)
      scaled[i] = phases[i] * std::exp(logmags[i] - max_logmag);
    const Complex sum = pairwise_sum(scaled);
    out.mantissa = (p.a * kPi / 2.0) * pref_phase * sum;
    out.abs_error_est = (p.a * kPi / 2.0) *
                        (pref.abs_error_est * std::abs(sum) +
                         2.0 * std::exp(logmags.back() - max_logmag) +
                         1e-15 * double(scaled.size()));
  }
  // diagonal-lattice sum, scaled into the same exponent
  {
    std::vector<double> loglam;
    std::vector<Complex> phaselam;
    // |z_lambda_l| ~ e^{-sqrt(2)|Re k| |xi_l| / a}: the Moak-style magnitude
    // estimate gives the l needed for the tolerance; the fixed floor guards
    // stalls at large |Re k|.
    const double L = -std::log(std::max(tol, 1e-300)) + 7.0;
    const double need = kernel.d * p.a * L * L / (2.0 * kPi * k.real() * k.real());
    const long cap =
        std::max<long>(10 * long(std::ceil(p.a * kernel.d)) + 50, long(need / 2.0) + 50);
    if (cap > 3000000)
      throw ConvergenceError(
          "neg_continuation: lambda sum impractically slow this close to Re k = 0; "
          "use the flat continuation");
    double lmax = -1e300;
    int small_run = 0;
    const int l0 = kernel.kind == KernelSpec::Kind::minus ? 1 : 0;
    const double front = std::log(p.a * kPi / (2.0 * kernel.d));
    for (long l = l0; l <= cap + l0; ++l) {
      const Complex xi = xi_point(int(l), p, kernel.d, kernel.kind == KernelSpec::Kind::minus);
      const LogValue d1 = delta_kernel_log(xi, k, p, tol);
      const LogValue d2 = delta_kernel_log(std::conj(xi), k, p, tol);
      work += d1.work + d2.work;
      // pairwise combine the two conjugate-lattice pieces at a shared scale
      const Complex l1 = front + d1.log - std::log(xi);
      const Complex l2 = front + d2.log - std::log(std::conj(xi));
      const double m = std::max(l1.real(), l2.real());
      const Complex pair = (d1.exact_zero ? Complex{0.0, 0.0}
                                          : std::exp(l1 - Complex{m, 0.0})) +
                           (d2.exact_zero ? Complex{0.0, 0.0}
                                          : std::exp(l2 - Complex{m, 0.0}));
      loglam.push_back(m);
      phaselam.push_back(pair);
      lmax = std::max(lmax, m);
      small_run = (m < lmax + std::log(tol) - 5.0) ? small_run + 1 : 0;
      if (small_run >= 3) break;
    }
    if (loglam.back() > lmax + std::log(tol) && loglam.back() > out.log_scale + std::log(tol))
      throw ConvergenceError("neg_continuation: lambda tail did not decay within the cap");
    // merge the two parts at a common exponent
    const double new_scale = std::max(out.log_scale, lmax);
    out.mantissa *= std::exp(out.log_scale - new_scale);
    out.abs_error_est *= std::exp(out.log_scale - new_scale);
    std::vector<Complex> scaled(loglam.size());
    for (size_t i = 0; i < loglam.size(); ++i)
      scaled[i] = phaselam[i] * std::exp(loglam[i] - new_scale);
    out.mantissa -= pairwise_sum(scaled);
    out.abs_error_est +=
        2.0 * std::abs(scaled.back()) + 1e-15 * double(scaled.size());
    out.log_scale = new_scale;
  }
  out.work = work;
  return out;
}

EvalResult neg_continuation(Complex k, const KernelSpec& kernel, const QParams& p, int r,
                            double tol) {
  const ScaledValue s = neg_continuation_scaled(k, kernel, p, r, tol);
  EvalResult out;
  out.value = s.mantissa * std::exp(s.log_scale);
  out.abs_error_est = s.abs_error_est * std::exp(s.log_scale);
  out.work = s.work;
  return out;
}

EvalResult imaginary_continued(Complex k, const KernelSpec& kernel, const QParams& p,
                               double tol) {
  const double eps = flat_epsilon(p, kernel.d);
  if (k.real() > 0.5 * eps) return imaginary_integral(k, kernel, p, tol);
  if (k.real() < -0.5 * eps || kernel.kind != KernelSpec::Kind::plus)
    return neg_continuation(k, kernel, p, 0, tol);
  return flat_continuation(k, kernel, p, tol);
}

EvalResult renormalized_eval(const EvalResult& base, NormalizerKind kind, Complex k,
                             const QParams& p, double d) {
  const EvalResult norm = normalizer(kind, k, p, d);
  EvalResult r;
  r.value = norm.value * base.value;
  r.abs_error_est =
      std::abs(norm.value) * base.abs_error_est + norm.abs_error_est * std::abs(base.value);
  r.work = base.work + norm.work;
  return r;
}

StableProfile stable_profile(double kappa, double nu, const KernelSpec& kernel, const QParams& p,
                             int r_max, double tol) {
  if (!(kappa > 0.0 && kappa < 1.0)) throw DomainError("stable_profile: kappa must be in (0,1)");
  StableProfile out;
  Complex prev{0.0, 0.0};
  bool have_prev = false;
  for (int r = 1; r <= r_max; ++r) {
    const Complex k{kappa - double(r), nu};
    const ScaledValue base = neg_continuation_scaled(k, kernel, p, 0, tol);
    const LogValue lbeta = normalizer_log(NormalizerKind::beta, k, p);
    const Complex v =
        base.mantissa * std::exp(lbeta.log + Complex{base.log_scale, 0.0});
    if (have_prev) {
      const double diff = std::abs(v - prev);
      out.cauchy_diffs.push_back(diff);
      if (diff < 1e-6) {
        out.psi = v;
        out.converged = true;
        out.r_used = r;
        return out;
      }
    }
    prev = v;
    have_prev = true;
  }
  out.psi = prev;
  out.converged = false;
  out.r_used = r_max;
  return out;
}

}  // namespace qzeta
