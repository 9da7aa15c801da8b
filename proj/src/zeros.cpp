#include "qzeta/zeros.hpp"

#include <algorithm>
#include <cmath>

#include "qzeta/classical.hpp"

namespace qzeta {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double Rect::diam() const { return std::hypot(width(), height()); }

// ---------------------------------------------------------------------------
// winding
// ---------------------------------------------------------------------------

namespace {

struct EdgeWalk {
  double total_arg = 0.0;
  long samples = 0;
  bool ok = true;
};

// Argument change along the segment [a,b], inserting midpoints until each
// step turns by less than pi/2.
EdgeWalk walk_edge(const ComplexFn& f, Complex a, Complex b, const WindingOptions& opts) {
  EdgeWalk w;
  struct Node {
    double t;
    Complex v;
  };
  std::vector<Node> nodes(size_t(opts.initial_per_edge) + 1);
  double edge_max = 0.0;
  for (int i = 0; i <= opts.initial_per_edge; ++i) {
    const double t = double(i) / double(opts.initial_per_edge);
    nodes[size_t(i)] = {t, f(a + (b - a) * t)};
    edge_max = std::max(edge_max, std::abs(nodes[size_t(i)].v));
  }
  w.samples += opts.initial_per_edge + 1;
  const double floor_abs = opts.boundary_floor * std::max(edge_max, 1e-280);
  for (const auto& n : nodes)
    if (std::abs(n.v) < floor_abs) {
      w.ok = false;  // boundary zero suspected
      return w;
    }
  size_t i = 0;
  int refines = 0;
  while (i + 1 < nodes.size()) {
    const Complex ratio = nodes[i + 1].v / nodes[i].v;
    const double dtheta = std::arg(ratio);
    if (std::abs(dtheta) < 0.5 * kPi || (nodes[i + 1].t - nodes[i].t) < 1e-12) {
      w.total_arg += dtheta;
      ++i;
      continue;
    }
    if (++refines > (1 << opts.max_refine)) {
      w.ok = false;
      return w;
    }
    const double tm = 0.5 * (nodes[i].t + nodes[i + 1].t);
    const Complex vm = f(a + (b - a) * tm);
    ++w.samples;
    if (std::abs(vm) < floor_abs) {
      w.ok = false;
      return w;
    }
    nodes.insert(nodes.begin() + long(i) + 1, {tm, vm});
  }
  return w;
}

}  // namespace

WindingResult winding_count(const ComplexFn& f, const Rect& rect, const WindingOptions& opts) {
  const Complex c1{rect.re_lo, rect.im_lo}, c2{rect.re_hi, rect.im_lo};
  const Complex c3{rect.re_hi, rect.im_hi}, c4{rect.re_lo, rect.im_hi};
  WindingResult r;
  double total = 0.0;
  for (const auto& [a, b] :
       {std::pair{c1, c2}, std::pair{c2, c3}, std::pair{c3, c4}, std::pair{c4, c1}}) {
    const EdgeWalk w = walk_edge(f, a, b, opts);
    r.samples += w.samples;
    if (!w.ok) return r;  // inconclusive
    total += w.total_arg;
  }
  const double turns = total / (2.0 * kPi);
  const long nearest = std::lround(turns);
  if (std::abs(turns - double(nearest)) > 0.1) return r;  // non-integer: inconclusive
  r.winding = int(nearest);
  r.conclusive = true;
  return r;
}

// ---------------------------------------------------------------------------
// locating
// ---------------------------------------------------------------------------

namespace {

int poles_inside(const Rect& rect, const std::vector<Complex>& poles) {
  int n = 0;
  for (const auto& z : poles)
    if (rect.contains(z)) ++n;
  return n;
}

Rect jitter(const Rect& rect, double f) {
  const double dx = f * rect.width(), dy = f * rect.height();
  return {rect.re_lo - dx, rect.re_hi + dx, rect.im_lo - dy, rect.im_hi + dy};
}

// winding with boundary-zero jitter and known-pole compensation: returns the
// number of zeros inside (winding + enclosed poles).
std::optional<int> zeros_inside(const ComplexFn& f, Rect rect, const LocateOptions& opts,
                                Rect& used) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    WindingOptions w = opts.winding;
    const WindingResult res = winding_count(f, rect, w);
    if (res.conclusive) {
      used = rect;
      return res.winding + poles_inside(rect, opts.known_poles);
    }
    rect = jitter(rect, 1e-4 * double(attempt + 1) * 3.0);
  }
  return std::nullopt;
}

void subdivide(const ComplexFn& f, const Rect& rect, int count, const LocateOptions& opts,
               int depth, LocateOutcome& out) {
  if (count <= 0) return;
  const bool small_enough = rect.diam() < opts.tol;
  if ((count == 1 && small_enough) || depth >= opts.max_depth || (small_enough && count > 1)) {
    // accept; polish a simple zero with a few safeguarded Newton steps
    ZeroRecord z;
    z.function_id = opts.function_id;
    z.a = opts.a;
    z.d = opts.d;
    z.enclosure = rect;
    z.multiplicity = count;
    Complex loc = rect.center();
    if (count == 1) {
      for (int it = 0; it < 30; ++it) {
        const Complex fv = f(loc);
        const double h = std::max(1e-9, 1e-7 * rect.diam());
        const Complex df = finite_difference_derivative(f, loc, h);
        if (std::abs(df) == 0.0) break;
        const Complex step = fv / df;
        const Complex next = loc - step;
        if (!jitter(rect, 0.5).contains(next)) break;  // stay near the cell
        loc = next;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(loc))) break;
      }
      if (!rect.contains(loc)) loc = rect.center();
    }
    z.location = loc;
    z.residual = std::abs(f(loc));
    out.zeros.push_back(z);
    return;
  }
  const double rm = 0.5 * (rect.re_lo + rect.re_hi);
  const double im = 0.5 * (rect.im_lo + rect.im_hi);
  const Rect quads[4] = {{rect.re_lo, rm, rect.im_lo, im},
                         {rm, rect.re_hi, rect.im_lo, im},
                         {rect.re_lo, rm, im, rect.im_hi},
                         {rm, rect.re_hi, im, rect.im_hi}};
  int found = 0;
  for (const auto& q : quads) {
    Rect used;
    const std::optional<int> n = zeros_inside(f, q, opts, used);
    if (!n) {
      out.inconclusive.push_back(q);
      continue;
    }
    found += *n;
    subdivide(f, used, *n, opts, depth + 1, out);
  }
  // winding additivity check: children must account for the parent's count
  if (found != count && out.inconclusive.empty()) {
    // boundary jitter may have moved a zero across an edge; re-report parent
    // as inconclusive rather than dropping anything silently
    if (found < count) out.inconclusive.push_back(rect);
  }
}

}  // namespace

LocateOutcome locate_zeros(const ComplexFn& f, const Rect& rect, const LocateOptions& opts) {
  LocateOutcome out;
  Rect used;
  const std::optional<int> n = zeros_inside(f, rect, opts, used);
  if (!n) {
    out.inconclusive.push_back(rect);
    return out;
  }
  subdivide(f, used, *n, opts, 0, out);
  std::sort(out.zeros.begin(), out.zeros.end(), [](const ZeroRecord& x, const ZeroRecord& y) {
    if (x.location.imag() != y.location.imag()) return x.location.imag() < y.location.imag();
    return x.location.real() < y.location.real();
  });
  return out;
}

// ---------------------------------------------------------------------------
// argument profile
// ---------------------------------------------------------------------------

std::vector<double> argument_profile(const ComplexFn& f, double re_x, double im_lo, double im_hi,
                                     const ProfileOptions& opts) {
  struct Node {
    double y;
    Complex v;
  };
  std::vector<Node> nodes(size_t(opts.n_points) + 1);
  for (int i = 0; i <= opts.n_points; ++i) {
    const double y = im_lo + (im_hi - im_lo) * double(i) / double(opts.n_points);
    nodes[size_t(i)].y = y;
    nodes[size_t(i)].v = f({re_x, y});
    if (std::abs(nodes[size_t(i)].v) == 0.0)
      throw DomainError("argument_profile: exact zero on the segment");
  }
  if (opts.auto_refine) {
    long budget = (1L << opts.max_refine);
    size_t i = 0;
    while (i + 1 < nodes.size()) {
      const double dtheta = std::arg(nodes[i + 1].v / nodes[i].v);
      if (std::abs(dtheta) < 0.5 * kPi || nodes[i + 1].y - nodes[i].y < 1e-11) {
        ++i;
        continue;
      }
      if (--budget < 0) throw ConvergenceError("argument_profile: unwrap refinement cap");
      const double ym = 0.5 * (nodes[i].y + nodes[i + 1].y);
      nodes.insert(nodes.begin() + long(i) + 1, {ym, f({re_x, ym})});
    }
  }
  // cumulative argument anchored at the first node's principal argument
  std::vector<double> out;
  out.reserve(nodes.size());
  double acc = std::arg(nodes[0].v);
  out.push_back(acc);
  for (size_t i = 1; i < nodes.size(); ++i) {
    acc += std::arg(nodes[i].v / nodes[i - 1].v);
    out.push_back(acc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// tracking
// ---------------------------------------------------------------------------

std::vector<ZeroRecord> track_zero(const FamilyFn& f, const ZeroRecord& start,
                                   const std::vector<double>& a_schedule,
                                   const TrackOptions& opts) {
  std::vector<ZeroRecord> traj;
  traj.push_back(start);
  Complex prev = start.location;
  std::optional<Complex> prev2;
  double prev_a = start.a;
  for (double a : a_schedule) {
    // linear extrapolation seed in log(a)
    Complex seed = prev;
    if (prev2 && prev_a > 0.0) seed = prev + (prev - *prev2);
    auto g = [&](Complex k) { return f(a, k); };
    double box = opts.initial_box;
    std::optional<ZeroRecord> found;
    for (int grow = 0; grow <= opts.max_grow; ++grow) {
      Rect rect{seed.real() - box, seed.real() + box, seed.imag() - box, seed.imag() + box};
      LocateOptions lo;
      lo.tol = opts.locate_tol;
      lo.function_id = start.function_id;
      lo.a = a;
      lo.d = start.d;
      if (opts.pole_hint) lo.known_poles = opts.pole_hint(a);
      LocateOutcome res;
      try {
        res = locate_zeros(g, rect, lo);
      } catch (const std::runtime_error&) {
        res = {};
      }
      if (!res.zeros.empty()) {
        // nearest to the seed
        std::sort(res.zeros.begin(), res.zeros.end(),
                  [&](const ZeroRecord& x, const ZeroRecord& y) {
                    return std::abs(x.location - seed) < std::abs(y.location - seed);
                  });
        found = res.zeros.front();
        break;
      }
      box *= 2.0;
    }
    if (!found)
      throw ConvergenceError("track_zero: lost the trajectory at a = " + std::to_string(a));
    traj.push_back(*found);
    prev2 = prev;
    prev = found->location;
    prev_a = a;
  }
  return traj;
}

// ---------------------------------------------------------------------------
// linear approximations and counting formulas
// ---------------------------------------------------------------------------

namespace {

Complex zeta_plus(Complex s) {
  return -cexpm1((1.0 - s) * std::log(2.0)) * complex_zeta(s).value;
}

Complex zeta_plus_deriv(Complex s) {
  const Complex two = std::exp((1.0 - s) * std::log(2.0));
  return std::log(2.0) * two * complex_zeta(s).value +
         (1.0 - two) * complex_zeta_deriv(s).value;
}

}  // namespace

Complex linear_zero_approx(Complex z, double a, double d, LinearVariant variant) {
  const Complex dz = complex_zeta_deriv(z + 0.5).value;
  if (std::abs(dz) < 1e-12)
    throw PoleProximityError("linear_zero_approx: zeta'(z+1/2) vanishes");
  Complex num, den;
  switch (variant) {
    case LinearVariant::im_plus:
    case LinearVariant::sharp_plus:
      num = (4.0 / d) * (z + 0.5) * zeta_plus(z + 1.5) - d * (z - 1.0) * zeta_plus(z - 0.5);
      den = 12.0 * a * zeta_plus_deriv(z + 0.5);
      break;
    case LinearVariant::im_minus:
    case LinearVariant::sharp_minus:
      num = (4.0 / d) * (z + 0.5) * complex_zeta(z + 1.5).value -
            d * (z - 1.0) * complex_zeta(z - 0.5).value;
      den = 12.0 * a * dz;
      break;
    case LinearVariant::re:
      num = 4.0 * (z + 0.5) * complex_zeta(z + 1.5).value -
            (z - 1.0) * complex_zeta(z - 0.5).value;
      den = 12.0 * a * dz;
      break;
  }
  const double sign =
      (variant == LinearVariant::im_plus || variant == LinearVariant::im_minus) ? 1.0 : -1.0;
  return z * (1.0 + sign * num / den);
}

double count_formulas(CountFormula which, const CountArgs& args) {
  switch (which) {
    case CountFormula::N_r: {
      const double x = 1.0 + args.d * std::pow(double(args.r) + 1.0 - args.kappa, 2);
      return 2.0 * std::floor(x / (4.0 * args.a * kPi)) + 1.0;
    }
    case CountFormula::N_T_classical:
      return args.T / (2.0 * kPi) * (std::log(args.T / (2.0 * kPi)) - 1.0);
    case CountFormula::N_hat_inf:
      return args.T / kPi * std::log(args.T / kPi);
    case CountFormula::N_tilde_inf:
      return args.T / (2.0 * kPi) * (std::log(args.T / (16.0 * kPi)) - std::log(kPi));
    case CountFormula::N_hat_T:
      return args.T / kPi * (std::log(args.T) - 1.0 - std::log(2.0 * args.d));
    case CountFormula::N_tilde_T:
      return args.T / (2.0 * kPi) *
             (std::log(args.T / (2.0 * kPi)) - 1.0 + 2.0 * std::log(2.0 * args.d));
  }
  throw DomainError("count_formulas: unknown formula");
}

}  // namespace qzeta
