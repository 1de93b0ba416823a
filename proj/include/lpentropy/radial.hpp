#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lpentropy/closedform.hpp"
#include "lpentropy/rng.hpp"

namespace lpentropy {

// Analytic radial families. Every family has a closed-form derivative,
// nonnegative values, and either stretched-exponential decay or compact
// support, so truncation radii are analytic.
//   stretched_exp    params {s}:       exp(-r^s), s > 1
//   gaussian_mixture params {w, b2}:   exp(-r^2) + w exp(-b2 r^2), w >= 0, b2 > 0
//   bump_mixture     params {w, R2}:   psi(r) + w psi(r/R2) with the mollifier
//                                      psi(t) = exp(1 - 1/(1 - t^2)) on |t| < 1
enum class RadialFamily { stretched_exp, gaussian_mixture, bump_mixture };

std::string_view family_name(RadialFamily family);
RadialFamily family_from_name(std::string_view name);

// Per-parameter search/draw boxes. These double as the optimizer constraints
// and the randomized-profile domains, and stay strictly inside each family's
// open parameter domain.
std::vector<std::pair<double, double>> family_box(RadialFamily family);

struct ParametricProfile {
  RadialFamily family = RadialFamily::stretched_exp;
  std::vector<double> params;
  double amplitude = 1.0;  // u(r) = amplitude * base(dilation * r)
  double dilation = 1.0;

  void validate() const;
  double value(double r) const;
  double derivative(double r) const;
  // Radius beyond which the profile's own tail bound puts less than 1e-12
  // of any of the integrals used here (covers every exponent >= 1).
  double tail_radius(int n) const;
  std::string describe() const;
};

// The unit-mass extremal a e^{-r^{p/(p-1)}} as a ParametricProfile.
ParametricProfile extremal_profile(int n, double p);

// Uniform draw from the family box. Deterministic given the Rng state.
ParametricProfile random_profile(RadialFamily family, Rng& rng);

// Sampled carrier: values on a strictly increasing grid r_0 = 0 .. r_N.
// Construction validates monotonicity, nonnegativity, finiteness, rejects
// the identically-zero profile, and enforces the tail criterion
// value(r_N) r_N^n < 1e-12 * (L^1 mass).
struct RadialProfile {
  std::vector<double> grid;
  std::vector<double> values;
  RadialProfile(std::vector<double> grid_in, std::vector<double> values_in,
                int n);
};

RadialProfile sample_profile(const ParametricProfile& profile, int n,
                             std::size_t n_nodes = 2000);

struct FunctionalReport {
  double lp_mass = 0.0;  // int |u|^p
  double entropy = 0.0;
  double dirichlet = 0.0;
  double deficit = 0.0;
  Params params;
  std::string source; // profile description or quadrature route
};

// --- analytic-profile functionals (adaptive quadrature) ---
double lp_mass(const ParametricProfile& u, int n, double p);
double lp_norm(const ParametricProfile& u, int n, double p);
// int u^q dx for any exponent q >= 1 (q may differ from the profile's p)
double lq_mass(const ParametricProfile& u, int n, double q);
// int (u^q - u^p) dx evaluated cancellation-free; requires q < p.
double mass_gap(const ParametricProfile& u, int n, double p, double q);
// copy with amplitude rescaled to unit L^p norm
ParametricProfile normalized(const ParametricProfile& u, int n, double p);
// Ent(|u|^p) = int u^p log(u^p); requires unit L^p norm within 1e-8.
double entropy(const ParametricProfile& u, int n, double p);
double dirichlet(const ParametricProfile& u, int n, double p);
// (n/p) log(A0(p) * dirichlet) - entropy; zero exactly at the extremal.
double entropy_deficit(const ParametricProfile& u, int n, double p);
// (entropy, (n/p) log ||u||_{p*}^p) with p* = np/(n-p); lhs <= rhs + 1e-8.
std::pair<double, double> holder_interpolation_check(const ParametricProfile& u,
                                                     int n, double p);
FunctionalReport functional_report(const ParametricProfile& u, int n, double p);

// --- sampled-profile functionals (nodal quadrature, 5-point derivatives) ---
double lp_mass(const RadialProfile& u, int n, double p);
double lp_norm(const RadialProfile& u, int n, double p);
double entropy(const RadialProfile& u, int n, double p);
double dirichlet(const RadialProfile& u, int n, double p);
double entropy_deficit(const RadialProfile& u, int n, double p);

// Two-column CSV (radius,value) preceded by a header comment carrying
// (n, p, family, params).
void write_profile_csv(std::ostream& os, const RadialProfile& u, int n,
                       double p, std::string_view family,
                       const std::vector<double>& params);

}  // namespace lpentropy
