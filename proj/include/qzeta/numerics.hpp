#ifndef QZETA_NUMERICS_HPP
#define QZETA_NUMERICS_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qzeta {

using Complex = std::complex<double>;

// Value with an attached absolute-error estimate and a work counter
// (series terms or quadrature nodes consumed).
struct EvalResult {
  Complex value{0.0, 0.0};
  double abs_error_est = 0.0;
  long work = 1;
};

struct PoleProximityError : std::runtime_error {
  explicit PoleProximityError(const std::string& what) : std::runtime_error(what) {}
};
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// exp(z)-1 without cancellation for small z.
Complex cexpm1(Complex z);

// 1 - exp(z), stable near z = 0.
inline Complex one_minus_exp(Complex z) { return -cexpm1(z); }

// Deterministic pairwise reduction; index-ordered, so reruns are bit-identical.
Complex pairwise_sum(const std::vector<Complex>& terms);

// Principal dilogarithm, |z| <= 1 required (all internal uses satisfy this).
Complex dilog_unit(Complex z);

// Infinite product exp(sum of log-factors).  The caller guarantees the
// log-factor magnitudes decay geometrically with ratio <= decay_ratio < 1;
// truncation stops at the first index whose magnitude is below
// tol*(1-decay_ratio) and the geometric tail goes into abs_error_est.
EvalResult stable_product(const std::function<Complex(long)>& log_factor,
                          double decay_ratio, double tol, long work_cap = 400000);

enum class PathKind { segment, ray, sharp_hook, imaginary_axis_shifted, period_segment };

// Integration path.  decay_scale is the distance beyond which the caller
// promises the integrand magnitude is below tol (rays and shifted axes are
// truncated there, then extended in doubling chunks until negligible).
struct PathSpec {
  PathKind kind = PathKind::segment;
  Complex anchor_a{0.0, 0.0};
  Complex anchor_b{0.0, 0.0};  // segment end, or ray direction (unit scale)
  double epsilon = 0.0;
  double decay_scale = 1.0;

  static PathSpec segment(Complex a, Complex b);
  static PathSpec ray(Complex from, Complex dir, double decay_scale);
  // inf+eps*i -> eps*i -> 0 -> -eps*i -> inf-eps*i (no 1/2i factor applied here)
  static PathSpec sharp_hook(double eps, double decay_scale);
  // vertical line through eps, from eps-i*inf to eps+i*inf
  static PathSpec imaginary_axis_shifted(double eps, double decay_scale);
  // straight segment integrated by the periodic trapezoid rule
  static PathSpec period_segment(Complex a, Complex b);
};

struct QuadOptions {
  long node_cap = 2000000;
  int max_depth = 48;
};

// Adaptive Gauss-Kronrod (G7/K15) along the path; period_segment uses the
// node-doubling trapezoid rule instead.  abs_error_est covers quadrature and
// ray-truncation error.  Node pairs are always accumulated symmetrically, so
// integrating a reversed segment yields the exact negative.
EvalResult integrate_path(const std::function<Complex(Complex)>& f, const PathSpec& path,
                          double tol, const QuadOptions& opts = {});

// Central difference (f(z+h)-f(z-h))/(2h); accuracy is the caller's contract.
Complex finite_difference_derivative(const std::function<Complex(Complex)>& f, Complex z, double h);

}  // namespace qzeta

#endif
