#ifndef QZETA_ZEROS_HPP
#define QZETA_ZEROS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qzeta/numerics.hpp"

namespace qzeta {

struct Rect {
  double re_lo = 0.0, re_hi = 0.0, im_lo = 0.0, im_hi = 0.0;
  double width() const { return re_hi - re_lo; }
  double height() const { return im_hi - im_lo; }
  double diam() const;
  Complex center() const { return {0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)}; }
  bool contains(Complex z) const {
    return z.real() >= re_lo && z.real() <= re_hi && z.imag() >= im_lo && z.imag() <= im_hi;
  }
};

struct ZeroRecord {
  std::string function_id;
  double a = 0.0;
  double d = 1.0;
  Complex location{0.0, 0.0};
  Rect enclosure{};
  double residual = 0.0;
  std::optional<Complex> classical_anchor;
  int multiplicity = 1;
};

using ComplexFn = std::function<Complex(Complex)>;

struct WindingOptions {
  int initial_per_edge = 48;
  int max_refine = 18;
  double boundary_floor = 1e-11;  // relative to the edge's max |f|
  std::vector<Complex> known_poles;  // winding gets their count added back by callers
};

struct WindingResult {
  int winding = 0;
  bool conclusive = false;
  long samples = 0;
};

// Total argument change / 2pi around the rectangle boundary, refining until
// every step is below pi/2.  Counts zeros minus poles of a meromorphic f.
WindingResult winding_count(const ComplexFn& f, const Rect& rect,
                            const WindingOptions& opts = {});

struct LocateOptions {
  double tol = 1e-6;           // final enclosure diameter
  WindingOptions winding{};
  std::vector<Complex> known_poles;  // poles inside cells are compensated exactly
  int max_depth = 60;
  std::string function_id = "f";
  double a = 0.0;
  double d = 1.0;
};

struct LocateOutcome {
  std::vector<ZeroRecord> zeros;
  std::vector<Rect> inconclusive;
};

// Quadrisection by winding, then a safeguarded in-cell Newton polish.
LocateOutcome locate_zeros(const ComplexFn& f, const Rect& rect, const LocateOptions& opts = {});

struct ProfileOptions {
  int n_points = 320;
  bool auto_refine = true;
  int max_refine = 14;
};

// Cumulative (unwrapped) argument along the vertical segment re_x + i[im_lo, im_hi].
std::vector<double> argument_profile(const ComplexFn& f, double re_x, double im_lo, double im_hi,
                                     const ProfileOptions& opts = {});

struct TrackOptions {
  double locate_tol = 1e-7;
  double initial_box = 0.2;
  int max_grow = 6;
  std::vector<Complex> (*pole_hint)(double a) = nullptr;
};

using FamilyFn = std::function<Complex(double /*a*/, Complex /*k*/)>;

// Predictor-corrector continuation of one zero along an a-schedule.
std::vector<ZeroRecord> track_zero(const FamilyFn& f, const ZeroRecord& start,
                                   const std::vector<double>& a_schedule,
                                   const TrackOptions& opts = {});

enum class LinearVariant { im_plus, im_minus, re, sharp_plus, sharp_minus };

// First-order deformation z~(a) of a classical zero z of zeta(k+1/2).
Complex linear_zero_approx(Complex z, double a, double d, LinearVariant variant);

enum class CountFormula { N_r, N_T_classical, N_hat_inf, N_tilde_inf, N_hat_T, N_tilde_T };

struct CountArgs {
  double a = 1.0, d = 1.0, kappa = 0.5, T = 0.0;
  int r = 0;
};

double count_formulas(CountFormula which, const CountArgs& args);

}  // namespace qzeta

#endif
