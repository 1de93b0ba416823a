#include "lpentropy/closedform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lpentropy {

namespace {
constexpr double kPi = std::numbers::pi;
}

void Params::validate() const {
  if (n < 2) throw std::invalid_argument("requires integer dimension n >= 2");
  if (!(p > 1.0)) throw std::invalid_argument("requires p > 1");
  if (!(p < n) || (!allow_p_above_2 && !(p <= 2.0)))
    throw std::invalid_argument("requires p < n and p <= 2");
  if (has_q() && !(q >= 1.0 && q < p))
    throw std::invalid_argument("requires 1 <= q < p");
}

double surface_area(int n) {
  if (n < 2) throw std::domain_error("surface_area: requires n >= 2");
  const double h = 0.5 * n;
  return 2.0 * std::pow(kPi, h) / std::tgamma(h);
}

double gamma_integral(double m, double s, double c) {
  if (!(m > 0.0) || !(s > 0.0) || !(c > 0.0))
    throw std::domain_error("gamma_integral: requires m, s, c > 0");
  const double ms = m / s;
  return std::exp(std::lgamma(ms) - ms * std::log(c)) / s;
}

double a0_constant(int n, double p) {
  if (!(p > 1.0 && p < n))
    throw std::domain_error("a0_constant: requires 1 < p < n");
  const double gamma_ratio =
      std::lgamma(0.5 * n + 1.0) - std::lgamma(n * (p - 1.0) / p + 1.0);
  return (p / n) * std::pow((p - 1.0) / std::numbers::e, p - 1.0) *
         std::pow(kPi, -0.5 * p) * std::exp((p / n) * gamma_ratio);
}

double theta(int n, double p, double q) {
  if (!(p > 1.0 && p < n))
    throw std::domain_error("theta: requires 1 < p < n");
  if (!(q >= 1.0 && q < p)) throw std::domain_error("theta: requires 1 <= q < p");
  return n * (p - q) / (q * p - q * n + n * p);
}

ExtremalSpec extremal_spec(int n, double p) {
  if (!(p > 1.0 && p < n))
    throw std::domain_error("extremal_spec: requires 1 < p < n");
  const double s = p / (p - 1.0);
  const double mass_of_unit_amplitude = surface_area(n) * gamma_integral(n, s, p);
  ExtremalSpec spec;
  spec.a = std::pow(mass_of_unit_amplitude, -1.0 / p);
  spec.b = 1.0;
  spec.s = s;
  spec.ext_prefactor =
      std::pow(kPi, -0.5 * n) *
      std::exp(std::lgamma(0.5 * n + 1.0) - std::lgamma(n * (p - 1.0) / p + 1.0));
  return spec;
}

Moments moments(int n, double p) {
  const ExtremalSpec spec = extremal_spec(n, p);
  const double s = spec.s;
  const double w = surface_area(n);
  const double ap = std::pow(spec.a, p);
  const double log_a = std::log(spec.a);
  Moments m;
  m.I1 = p * log_a - n / s;
  m.I2 = (n / p) * std::pow(s, p - 1.0);
  m.J1 = ap * w * gamma_integral(n + 2.0, s, p);
  m.J2 = ap * std::pow(s, p) * w * gamma_integral(n + s + 2.0, s, p);
  m.J3 = p * log_a * m.J1 - p * ap * w * gamma_integral(n + 2.0 + s, s, p);
  return m;
}

}  // namespace lpentropy
