#include "qzeta/classical.hpp"

#include <algorithm>
#include <cmath>

namespace qzeta {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Lanczos g = 7, n = 9 coefficient set.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059, 12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
}  // namespace

Complex log_gamma(Complex s) {
  if (s.real() < 0.1) {
    // reflection: log Gamma(s) = log(pi / sin(pi s)) - log Gamma(1-s)
    // keep the branch consistent by using log(sin) carefully near the axis
    const Complex sp = kPi * s;
    // log(sin(pi s)) computed to avoid overflow for large |Im s|
    Complex log_sin;
    if (std::abs(sp.imag()) > 20.0) {
      const Complex i{0.0, 1.0};
      // sin w = -e^{-iw}(1 - e^{2iw})/(2i) = e^{iw}(1 - e^{-2iw})/(2i)
      if (sp.imag() > 0.0)
        log_sin = -i * sp + std::log(-(1.0 - std::exp(2.0 * i * sp)) / (2.0 * i));
      else
        log_sin = i * sp + std::log((1.0 - std::exp(-2.0 * i * sp)) / (2.0 * i));
    } else {
      log_sin = std::log(std::sin(sp));
    }
    return std::log(Complex{kPi, 0.0}) - log_sin - log_gamma(1.0 - s);
  }
  const Complex z = s - 1.0;
  Complex x{kLanczos[0], 0.0};
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

ClassicalValue complex_gamma(Complex s) {
  if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real()))
    throw PoleProximityError("complex_gamma: pole at nonpositive integer");
  ClassicalValue v;
  v.value = std::exp(log_gamma(s));
  v.method = ClassicalMethod::lanczos_gamma;
  v.abs_error_est = 1e-13 * std::abs(v.value);
  return v;
}

// ---------------------------------------------------------------------------
// zeta
// ---------------------------------------------------------------------------

namespace {

// Borwein's algorithm for eta(s) = sum (-1)^{n-1} n^{-s}; the weight can be
// 1 or log(n) (for the termwise-differentiated series).
Complex borwein_eta(Complex s, int n, bool log_weight) {
  // d_k = n * sum_{i=0}^{k} (n+i-1)! 4^i / ((n-i)! (2i)!)
  std::vector<double> d(size_t(n) + 1);
  double sum = 0.0, term = 1.0;  // i = 0 term: n!/(n)!/0! = 1 -> times n below
  // compute iteratively: t_i = prod ... ; use logs to stay in range
  std::vector<double> t(size_t(n) + 1);
  t[0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    // ratio t_i/t_{i-1} = (n+i-1)(n-i+1) * 4 / ((2i-1)(2i))
    term *= double(n + i - 1) * double(n - i + 1) * 4.0 / (double(2 * i - 1) * double(2 * i));
    t[size_t(i)] = term;
  }
  sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    sum += t[size_t(i)];
    d[size_t(i)] = sum;
  }
  const double dn = d[size_t(n)];
  Complex acc{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double w = log_weight ? std::log(double(k + 1)) : 1.0;
    acc += sign * (d[size_t(k)] - dn) * w * std::exp(-s * std::log(double(k + 1)));
  }
  return -acc / dn;
}

int borwein_n(double abs_t) { return int(std::ceil(0.9 * abs_t)) + 40; }

struct EmZeta {
  Complex zeta;
  Complex dzeta;
  double err;
};

// Euler-Maclaurin for zeta and zeta' (termwise s-derivative of every piece).
EmZeta euler_maclaurin_zeta(Complex s, bool want_deriv) {
  static const double B2m[8] = {1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
                                5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0};
  const double t = std::abs(s.imag());
  const long N = std::max<long>(30, long(std::ceil(1.3 * t)));
  std::vector<Complex> terms(size_t(N) - 1), dterms;
  if (want_deriv) dterms.resize(size_t(N) - 1);
  for (long n = 1; n < N; ++n) {
    const double ln = std::log(double(n));
    const Complex v = std::exp(-s * ln);
    terms[size_t(n - 1)] = v;
    if (want_deriv) dterms[size_t(n - 1)] = -ln * v;
  }
  const double lnN = std::log(double(N));
  const Complex Nms = std::exp(-s * lnN);         // N^{-s}
  const Complex N1ms = Nms * double(N);           // N^{1-s}
  Complex z = pairwise_sum(terms) + N1ms / (s - 1.0) + 0.5 * Nms;
  Complex dz{0.0, 0.0};
  if (want_deriv)
    dz = pairwise_sum(dterms) + (-lnN * N1ms) / (s - 1.0) - N1ms / ((s - 1.0) * (s - 1.0)) -
         0.5 * lnN * Nms;
  // Bernoulli correction: sum B_2m/(2m)! (s)_{2m-1} N^{-s-2m+1}
  Complex poch = s;              // (s)_1
  Complex dpoch{1.0, 0.0};       // d/ds (s)_1
  double fact = 2.0;             // (2m)!
  Complex Npow = Nms * (1.0 / double(N));  // N^{-s-1}
  double last = 0.0;
  for (int m = 1; m <= 8; ++m) {
    if (m > 1) {
      // (s)_{2m-1} = (s)_{2m-3} (s+2m-3)(s+2m-2)
      const Complex f1 = s + double(2 * m - 3), f2 = s + double(2 * m - 2);
      dpoch = dpoch * f1 * f2 + poch * (f1 + f2);
      poch = poch * f1 * f2;
      fact *= double(2 * m - 1) * double(2 * m);
      Npow *= 1.0 / (double(N) * double(N));
    }
    const Complex term = B2m[m - 1] / fact * poch * Npow;  // N^{-s-2m+1}
    z += term;
    if (want_deriv) {
      const Complex dterm = B2m[m - 1] / fact * (dpoch - lnN * poch) * Npow;
      dz += dterm;
    }
    last = std::abs(term);
  }
  return {z, dz, last + 1e-15 * double(N)};
}

Complex one_minus_two_pow(Complex e) {
  // 1 - 2^e = 1 - exp(e log 2)
  return -cexpm1(e * std::log(2.0));
}

}  // namespace

ClassicalValue complex_zeta(Complex s) {
  if (std::abs(s - 1.0) < 1e-12) throw PoleProximityError("complex_zeta: pole at s = 1");
  ClassicalValue v;
  if (s.real() < 0.4) {
    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
    const ClassicalValue z1 = complex_zeta(1.0 - s);
    const Complex pref = std::exp(s * std::log(2.0) + (s - 1.0) * std::log(kPi) +
                                  log_gamma(1.0 - s));
    Complex sn;
    const Complex hp = 0.5 * kPi * s;
    if (std::abs(hp.imag()) > 20.0) {
      const Complex i{0.0, 1.0};
      sn = (hp.imag() > 0.0) ? -std::exp(-i * hp) / (2.0 * i) * (1.0 - std::exp(2.0 * i * hp))
                             : std::exp(i * hp) / (2.0 * i) * (1.0 - std::exp(-2.0 * i * hp));
    } else {
      sn = std::sin(hp);
    }
    v.value = pref * sn * z1.value;
    v.method = ClassicalMethod::functional_equation;
    v.abs_error_est = std::abs(v.value) * (z1.abs_error_est / std::max(1e-300, std::abs(z1.value)) + 1e-13);
    return v;
  }
  const double t = std::abs(s.imag());
  if (t <= 60.0) {
    const int n = borwein_n(t);
    const Complex eta = borwein_eta(s, n, false);
    const Complex den = one_minus_two_pow(1.0 - s);
    v.value = eta / den;
    v.method = ClassicalMethod::dirichlet_eta_series;
    v.abs_error_est = 1e-13 * std::abs(v.value) + 1e-14;
    return v;
  }
  const EmZeta em = euler_maclaurin_zeta(s, false);
  v.value = em.zeta;
  v.method = ClassicalMethod::euler_maclaurin;
  v.abs_error_est = em.err;
  return v;
}

ClassicalValue complex_zeta_deriv(Complex s) {
  if (std::abs(s - 1.0) < 1e-10) throw PoleProximityError("complex_zeta_deriv: pole at s = 1");
  ClassicalValue v;
  Complex primary;
  if (s.real() >= 0.4 && std::abs(s.imag()) <= 60.0) {
    const int n = borwein_n(std::abs(s.imag()));
    const Complex eta = borwein_eta(s, n, false);
    const Complex etap = -borwein_eta(s, n, true);  // sum (-1)^{n-1} (-log n) n^{-s}
    const Complex den = one_minus_two_pow(1.0 - s);
    const Complex dden = std::log(2.0) * std::exp((1.0 - s) * std::log(2.0));
    // zeta' = (eta' - zeta * d/ds(1-2^{1-s})) / (1-2^{1-s})
    primary = (etap - (eta / den) * dden) / den;
    v.method = ClassicalMethod::dirichlet_eta_series;
  } else if (s.real() >= 0.4) {
    const EmZeta em = euler_maclaurin_zeta(s, true);
    primary = em.dzeta;
    v.method = ClassicalMethod::euler_maclaurin;
  } else {
    // differentiate through the functional equation numerically
    primary = finite_difference_derivative([](Complex z) { return complex_zeta(z).value; }, s,
                                           1e-6);
    v.method = ClassicalMethod::functional_equation;
  }
  const Complex check = finite_difference_derivative(
      [](Complex z) { return complex_zeta(z).value; }, s, 1e-5);
  const double rel = std::abs(primary - check) / std::max(1e-300, std::abs(primary));
  if (rel > 1e-6)
    throw ConvergenceError("complex_zeta_deriv: series and finite-difference routes disagree");
  v.value = primary;
  v.abs_error_est = std::abs(primary - check);
  return v;
}

ClassicalValue classical_Z(Complex k, ZVariant variant, double d) {
  const ClassicalValue z = complex_zeta(k + 0.5);
  const Complex g = std::exp(log_gamma(k + 0.5));
  ClassicalValue v;
  v.value = z.value * g;
  v.method = z.method;
  if (variant == ZVariant::plus)
    v.value *= std::pow(Complex{d, 0.0}, -0.5 - k) * one_minus_two_pow(0.5 - k);
  v.abs_error_est = std::abs(v.value) * 1e-11;
  return v;
}

Complex gamma_limit_term(Complex k, double a) {
  const Complex g = std::exp(2.0 * log_gamma(k));
  return std::pow(Complex{4.0 * a, 0.0}, 0.5 - k) * std::tan(kPi * k) * g;
}

RiemannSiegel riemann_siegel_pair(double y) {
  if (!(y > 0.0)) throw DomainError("riemann_siegel_pair: y must be positive");
  const Complex lg = log_gamma(Complex{0.25, 0.5 * y});
  const double theta = lg.imag() - 0.5 * y * std::log(kPi);
  const Complex z = complex_zeta(Complex{0.5, y}).value;
  const Complex zv = std::exp(Complex{0.0, theta}) * z;
  if (std::abs(zv.imag()) > 1e-6 * std::max(1.0, std::abs(zv)) + 1e-6)
    throw ConvergenceError("riemann_siegel_pair: Z(y) imaginary residue too large");
  return {theta, zv.real()};
}

EtaIndicators eta_indicators(Complex z, double d) {
  if (std::abs(z.real()) > 1e-9 || z.imag() <= 0.0)
    throw DomainError("eta_indicators: z must lie on the positive imaginary axis");
  const Complex zp = complex_zeta_deriv(z + 0.5).value;
  if (std::abs(zp) < 1e-12) throw PoleProximityError("eta_indicators: zeta'(z+1/2) vanishes");
  EtaIndicators out{};
  {
    const Complex num = (4.0 / d) * (z + 0.5) * one_minus_two_pow(-0.5 - z) *
                            complex_zeta(z + 1.5).value -
                        d * (z - 1.0) * one_minus_two_pow(1.5 - z) *
                            complex_zeta(z - 0.5).value;
    out.eta_plus = (num / (zp * one_minus_two_pow(0.5 - z))).imag();
  }
  out.eta = ((1.0 - z) * complex_zeta(z - 0.5).value / zp).imag();
  const double y = z.imag();
  out.rho = (complex_zeta(Complex{1.5, y}).value * std::conj(complex_zeta_deriv(Complex{0.5, y}).value)).real();
  return out;
}

std::vector<double> zeta_zero_ordinates(double T, double scan_step) {
  std::vector<double> zeros;
  double y = 1.0;
  double zy = riemann_siegel_pair(y).Z;
  while (y < T) {
    const double y2 = std::min(y + scan_step, T + scan_step);
    const double z2 = riemann_siegel_pair(y2).Z;
    if ((zy < 0.0) != (z2 < 0.0)) {
      double lo = y, hi = y2, zlo = zy;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double zm = riemann_siegel_pair(mid).Z;
        if ((zlo < 0.0) != (zm < 0.0)) {
          hi = mid;
        } else {
          lo = mid;
          zlo = zm;
        }
        if (hi - lo < 1e-11) break;
      }
      const double root = 0.5 * (lo + hi);
      if (root <= T) zeros.push_back(root);
    }
    y = y2;
    zy = z2;
  }
  return zeros;
}

}  // namespace qzeta
