#pragma once

#include <cmath>
#include <limits>

namespace lpentropy {

// Parameter tuple shared by every experiment. q is optional (NaN = absent).
// The p <= 2 guard is on by default; the constants themselves are defined for
// all 1 < p < n, so library code that only needs that range can relax it.
struct Params {
  int n = 3;
  double p = 2.0;
  double q = std::numeric_limits<double>::quiet_NaN();
  bool allow_p_above_2 = false;

  bool has_q() const { return !std::isnan(q); }

  // Throws std::invalid_argument naming the violated precondition.
  void validate() const;
};

// omega_{n-1}: surface area of the unit sphere S^{n-1} in R^n.
double surface_area(int n);

// int_0^inf r^{m-1} e^{-c r^s} dr = Gamma(m/s) / (s c^{m/s}).
double gamma_integral(double m, double s, double c);

// Sharp constant of the Euclidean L^p entropy inequality,
//   A0(p) = (p/n)((p-1)/e)^{p-1} pi^{-p/2} (Gamma(n/2+1)/Gamma(n(p-1)/p+1))^{p/n}.
double a0_constant(int n, double p);

// Interpolation exponent theta = n(p-q)/(qp - qn + np), in (0,1) for
// 1 <= q < p < n; -> 0 as q -> p-.
double theta(int n, double p, double q);

// u0(r) = a e^{-b r^s} with s = p/(p-1), b fixed to 1 (the deficit and the
// Nash quotient are dilation invariant, so one gauge suffices), and a chosen
// so that the L^p mass of u0 on R^n is exactly 1. ext_prefactor is the
// alternative amplitude pi^{-n/2} Gamma(n/2+1) / Gamma(n(p-1)/p+1) that is
// sometimes quoted for this profile under a different normalization
// convention; it is reported for comparison and never used in identities.
struct ExtremalSpec {
  double a;
  double b;
  double s;
  double ext_prefactor;
};
ExtremalSpec extremal_spec(int n, double p);

// The five moment integrals of the unit-mass extremal u0:
//   I1 = int u0^p log(u0^p),       I2 = int |grad u0|^p,
//   J1 = int u0^p |x|^2,           J2 = int |grad u0|^p |x|^2,
//   J3 = int u0^p log(u0^p) |x|^2.
// log(u0^p) = p log a - p r^s is polynomial in r^s, so every one of these
// reduces exactly to gamma_integral; no digamma is needed.
struct Moments {
  double I1;
  double I2;
  double J1;
  double J2;
  double J3;
};
Moments moments(int n, double p);

}  // namespace lpentropy
