#include "qzeta/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace qzeta {

Complex cexpm1(Complex z) {
  // Re(e^z - 1) = expm1(x)cos(y) - 2 sin^2(y/2),  Im = e^x sin(y).
  const double x = z.real(), y = z.imag();
  if (x > 700.0) return std::exp(z) - 1.0;
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

Complex pairwise_sum(const std::vector<Complex>& terms) {
  std::function<Complex(size_t, size_t)> rec = [&](size_t lo, size_t hi) -> Complex {
    if (hi - lo <= 4) {
      Complex s{0.0, 0.0};
      for (size_t i = lo; i < hi; ++i) s += terms[i];
      return s;
    }
    const size_t mid = lo + (hi - lo) / 2;
    return rec(lo, mid) + rec(mid, hi);
  };
  return terms.empty() ? Complex{0.0, 0.0} : rec(0, terms.size());
}

namespace {

// Li2(e^{-u}) for Re u >= 0, |u| <= 3.8:
//   pi^2/6 + u log u - u - u^2/4
//   + sum_{m>=0} (-1)^m zeta(2m+2) u^{2m+3} / ((2m+3)(m+1) pi^{2m+2} 4^{m+1})
// (from integrating the sinh-product expansion of log(1-e^{-t})).
Complex dilog_exp_series(Complex u) {
  constexpr double pi = 3.14159265358979323846;
  static const std::vector<double> coeff = [] {
    std::vector<double> c;
    double sign = 1.0;
    for (int m = 0; m < 48; ++m) {
      const double s = 2.0 * (m + 1);
      const double N = 400.0;
      double zeta2m2 = 0.0;
      for (int n = 1; n < int(N); ++n) {
        const double t = std::pow(double(n), -s);
        zeta2m2 += t;
        if (t < 1e-22) break;
      }
      // Euler-Maclaurin tail: N^{1-s}/(s-1) + N^{-s}/2 + s N^{-s-1}/12
      zeta2m2 += std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s) +
                 s * std::pow(N, -s - 1.0) / 12.0;
      c.push_back(sign * zeta2m2 /
                  (double(2 * m + 3) * double(m + 1) * std::pow(pi, 2.0 * (m + 1)) *
                   std::pow(4.0, double(m + 1))));
      sign = -sign;
    }
    return c;
  }();
  if (std::abs(u) < 1e-280) return {pi * pi / 6.0, 0.0};
  Complex acc = pi * pi / 6.0 + u * std::log(u) - u - 0.25 * u * u;
  const Complex u2 = u * u;
  Complex pw = u * u2;  // u^{2m+3}
  for (size_t m = 0; m < coeff.size(); ++m) {
    const Complex term = coeff[m] * pw;
    acc += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(acc))) break;
    pw *= u2;
  }
  return acc;
}

}  // namespace

Complex dilog_unit(Complex z) {
  const double az = std::abs(z);
  if (az > 1.0 + 1e-12) throw DomainError("dilog_unit: |z| > 1");
  if (az < 0.5) {
    Complex s{0.0, 0.0}, p = z;
    for (int n = 1; n < 200; ++n) {
      s += p / double(n * n);
      p *= z;
      if (std::abs(p) < 1e-18 * (1.0 + std::abs(s))) break;
    }
    return s;
  }
  // |z| in [0.5, 1]: z = e^{-u} with Re u >= 0 and |u| <= sqrt(log(2)^2+pi^2)
  return dilog_exp_series(-std::log(z));
}

EvalResult stable_product(const std::function<Complex(long)>& log_factor,
                          double decay_ratio, double tol, long work_cap) {
  if (!(decay_ratio > 0.0 && decay_ratio < 1.0))
    throw DomainError("stable_product: decay ratio must lie in (0,1)");
  const double stop = tol * (1.0 - decay_ratio);
  Complex logsum{0.0, 0.0};
  double last_mag = 0.0;
  long j = 0;
  for (; j < work_cap; ++j) {
    const Complex lf = log_factor(j);
    logsum += lf;
    last_mag = std::abs(lf);
    if (last_mag <= stop) break;
  }
  if (j >= work_cap)
    throw ConvergenceError("stable_product: geometric bound not reached within work cap");
  const Complex value = std::exp(logsum);
  const double tail = last_mag * decay_ratio / (1.0 - decay_ratio);
  EvalResult r;
  r.value = value;
  r.abs_error_est = std::abs(value) * (tail + 1e-16 * double(j + 1));
  r.work = j + 1;
  return r;
}

PathSpec PathSpec::segment(Complex a, Complex b) {
  PathSpec p;
  p.kind = PathKind::segment;
  p.anchor_a = a;
  p.anchor_b = b;
  return p;
}
PathSpec PathSpec::ray(Complex from, Complex dir, double decay_scale) {
  PathSpec p;
  p.kind = PathKind::ray;
  p.anchor_a = from;
  p.anchor_b = dir / std::abs(dir);
  p.decay_scale = decay_scale;
  return p;
}
PathSpec PathSpec::sharp_hook(double eps, double decay_scale) {
  if (!(eps > 0.0)) throw DomainError("sharp_hook: eps must be positive");
  PathSpec p;
  p.kind = PathKind::sharp_hook;
  p.epsilon = eps;
  p.decay_scale = decay_scale;
  return p;
}
PathSpec PathSpec::imaginary_axis_shifted(double eps, double decay_scale) {
  if (!(eps > 0.0)) throw DomainError("imaginary_axis_shifted: eps must be positive");
  PathSpec p;
  p.kind = PathKind::imaginary_axis_shifted;
  p.epsilon = eps;
  p.decay_scale = decay_scale;
  return p;
}
PathSpec PathSpec::period_segment(Complex a, Complex b) {
  PathSpec p;
  p.kind = PathKind::period_segment;
  p.anchor_a = a;
  p.anchor_b = b;
  return p;
}

namespace {

// G7/K15 nodes and weights on [0,1] of the positive abscissae.
// col 0: node, col 1: Gauss weight (0 where Kronrod-only), col 2: Kronrod weight.
constexpr double kGK[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529}};

struct GKResult {
  Complex k15;
  double err;
};

GKResult gk15(const std::function<Complex(Complex)>& f, Complex a, Complex b, long& nodes) {
  const Complex x0 = 0.5 * (a + b);
  const Complex m = 0.5 * (b - a);
  const Complex y0 = f(x0);
  Complex g7 = kGK[0][1] * y0;
  Complex k15 = kGK[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    const Complex dx = m * kGK[i][0];
    const Complex yi = f(x0 + dx) + f(x0 - dx);  // symmetric pair, kept together
    g7 += kGK[i][1] * yi;
    k15 += kGK[i][2] * yi;
  }
  nodes += 15;
  g7 *= m;
  k15 *= m;
  GKResult r;
  r.k15 = k15;
  const double diff = std::abs(g7 - k15);
  r.err = diff * std::sqrt(std::max(diff, 1e-300)) * 200.0;
  r.err = std::min(r.err, diff * 50.0);
  return r;
}

struct AdaptState {
  Complex total{0.0, 0.0};
  double err = 0.0;
  long nodes = 0;
  bool capped = false;
};

void adapt(const std::function<Complex(Complex)>& f, Complex a, Complex b, double tol, int depth,
           const QuadOptions& opts, AdaptState& st) {
  if (st.nodes > opts.node_cap) {
    st.capped = true;
    return;
  }
  const GKResult r = gk15(f, a, b, st.nodes);
  if (r.err <= tol || depth >= opts.max_depth) {
    st.total += r.k15;
    st.err += r.err;
    return;
  }
  const Complex mid = 0.5 * (a + b);
  adapt(f, a, mid, tol * 0.6, depth + 1, opts, st);
  adapt(f, mid, b, tol * 0.6, depth + 1, opts, st);
}

Complex integrate_segment(const std::function<Complex(Complex)>& f, Complex a, Complex b,
                          double tol, const QuadOptions& opts, double& err, long& work) {
  AdaptState st;
  adapt(f, a, b, tol, 0, opts, st);
  if (st.capped)
    throw ConvergenceError("integrate_path: node cap exceeded (possible nearby singularity)");
  err += st.err;
  work += st.nodes;
  return st.total;
}

// Ray integration: [0,L], then doubling chunks until a chunk is negligible.
Complex integrate_ray(const std::function<Complex(Complex)>& f, Complex from, Complex dir,
                      double L, double tol, const QuadOptions& opts, double& err, long& work) {
  Complex total = integrate_segment(f, from, from + dir * L, tol, opts, err, work);
  double lo = L;
  for (int chunk = 0; chunk < 16; ++chunk) {
    const double hi = 2.0 * lo;
    const Complex piece =
        integrate_segment(f, from + dir * lo, from + dir * hi, tol, opts, err, work);
    total += piece;
    if (std::abs(piece) < 0.25 * tol * std::max(1.0, std::abs(total))) {
      err += std::abs(piece);
      return total;
    }
    lo = hi;
  }
  throw ConvergenceError("integrate_path: ray tail did not decay below tolerance");
}

Complex trapezoid_periodic(const std::function<Complex(Complex)>& f, Complex a, Complex b,
                           double tol, const QuadOptions& opts, double& err, long& work) {
  // Midpoint-offset trapezoid; for analytic periodic integrands the error
  // decays exponentially in the node count, so doubling until stable is safe.
  const Complex h = b - a;
  auto eval = [&](long n) {
    std::vector<Complex> vals(static_cast<size_t>(n));
    for (long m = 0; m < n; ++m) vals[size_t(m)] = f(a + h * ((m + 0.5) / double(n)));
    work += n;
    return pairwise_sum(vals) * (h / double(n));
  };
  long n = 64;
  Complex prev = eval(n);
  for (int it = 0; it < 16; ++it) {
    n *= 2;
    if (n > opts.node_cap) throw ConvergenceError("integrate_path: period rule node cap");
    const Complex cur = eval(n);
    const double change = std::abs(cur - prev);
    if (change < tol * std::max(1.0, std::abs(cur))) {
      err += change;
      return cur;
    }
    prev = cur;
  }
  throw ConvergenceError("integrate_path: period rule did not converge");
}

}  // namespace

EvalResult integrate_path(const std::function<Complex(Complex)>& f, const PathSpec& path,
                          double tol, const QuadOptions& opts) {
  EvalResult res;
  double err = 0.0;
  long work = 0;
  switch (path.kind) {
    case PathKind::segment:
      res.value = integrate_segment(f, path.anchor_a, path.anchor_b, tol, opts, err, work);
      break;
    case PathKind::ray:
      res.value = integrate_ray(f, path.anchor_a, path.anchor_b, path.decay_scale, tol, opts,
                                err, work);
      break;
    case PathKind::sharp_hook: {
      const double e = path.epsilon;
      const Complex ei{0.0, e};
      // inf+ei -> ei -> 0 -> -ei -> inf-ei
      res.value = -integrate_ray(f, ei, {1.0, 0.0}, path.decay_scale, tol, opts, err, work);
      res.value += integrate_segment(f, ei, {0.0, 0.0}, tol, opts, err, work);
      res.value += integrate_segment(f, {0.0, 0.0}, -ei, tol, opts, err, work);
      res.value += integrate_ray(f, -ei, {1.0, 0.0}, path.decay_scale, tol, opts, err, work);
      break;
    }
    case PathKind::imaginary_axis_shifted: {
      const Complex e{path.epsilon, 0.0};
      const Complex up{0.0, 1.0};
      res.value = integrate_ray(f, e, up, path.decay_scale, tol, opts, err, work);
      res.value -= integrate_ray(f, e, -up, path.decay_scale, tol, opts, err, work);
      break;
    }
    case PathKind::period_segment:
      res.value = trapezoid_periodic(f, path.anchor_a, path.anchor_b, tol, opts, err, work);
      break;
  }
  res.abs_error_est = err;
  res.work = std::max<long>(work, 1);
  return res;
}

Complex finite_difference_derivative(const std::function<Complex(Complex)>& f, Complex z,
                                     double h) {
  return (f(z + Complex{h, 0.0}) - f(z - Complex{h, 0.0})) / (2.0 * h);
}

}  // namespace qzeta
