#ifndef QZETA_CLASSICAL_HPP
#define QZETA_CLASSICAL_HPP

#include <vector>

#include "qzeta/numerics.hpp"

namespace qzeta {

enum class ClassicalMethod { lanczos_gamma, dirichlet_eta_series, euler_maclaurin, functional_equation };

struct ClassicalValue {
  Complex value{0.0, 0.0};
  ClassicalMethod method = ClassicalMethod::lanczos_gamma;
  double abs_error_est = 0.0;
};

// log Gamma, continuous for Re s > 0 (Lanczos form); reflection elsewhere.
Complex log_gamma(Complex s);

ClassicalValue complex_gamma(Complex s);

// zeta(s): accelerated eta series for moderate |Im s|, Euler-Maclaurin above,
// functional equation for Re s < 0.4.
ClassicalValue complex_zeta(Complex s);

// zeta'(s): termwise-differentiated series (or differentiated Euler-Maclaurin),
// cross-checked against a central difference; throws if the two routes
// disagree beyond 1e-6 relative.
ClassicalValue complex_zeta_deriv(Complex s);

enum class ZVariant { minus, plus };

// Z(k) = zeta(k+1/2)Gamma(k+1/2);  Z_+(k|d) = d^{-1/2-k} Z(k) (1 - 2^{1/2-k}).
ClassicalValue classical_Z(Complex k, ZVariant variant, double d = 1.0);

// (4a)^{1/2-k} tan(pi k) Gamma(k)^2: the transitional term in the critical strip.
Complex gamma_limit_term(Complex k, double a);

struct RiemannSiegel {
  double theta;
  double Z;
};
// theta(y) = Im log Gamma(1/4 + iy/2) - (y/2) log pi;  Z(y) = e^{i theta} zeta(1/2+iy).
RiemannSiegel riemann_siegel_pair(double y);

struct EtaIndicators {
  double eta_plus;
  double eta;
  double rho;
};
// Positivity indicators evaluated at z on the positive imaginary axis
// (normally a zero ordinate of zeta(k+1/2)).
EtaIndicators eta_indicators(Complex z, double d);

// Ordinates y of zeros of zeta(1/2+iy) in (0, T], by sign changes of Z(y)
// refined with bisection.
std::vector<double> zeta_zero_ordinates(double T, double scan_step = 0.05);

}  // namespace qzeta

#endif
