#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <utility>

namespace lpentropy {

// Adaptive Gauss-Kronrod on a finite interval. The depth limit keeps
// pathological integrands from hanging; 15 levels is far beyond what the
// smooth radial/zonal integrands here ever need.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-13,
                 int max_depth = 15) {
  using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
  return gk::integrate(std::forward<F>(f), a, b, max_depth, rel_tol);
}

template <class F>
std::pair<double, double> integrate_with_error(F&& f, double a, double b,
                                               double rel_tol = 1e-13,
                                               int max_depth = 15) {
  using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
  double err = 0.0;
  double v = gk::integrate(std::forward<F>(f), a, b, max_depth, rel_tol, &err);
  return {v, err};
}

}  // namespace lpentropy
