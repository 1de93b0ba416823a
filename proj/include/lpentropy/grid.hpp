#pragma once

#include <cstddef>
#include <vector>

namespace lpentropy {

// r_0 = 0, then nodes geometric from r_max*r_min_frac up to r_max.
// Geometric spacing resolves both the r^{n-1} degeneracy at the origin and
// the decay region with the same node budget. n_nodes counts all nodes.
std::vector<double> log_radial_grid(std::size_t n_nodes, double r_max,
                                    double r_min_frac = 1e-5);

// 0 = t_0 < ... < t_N = pi. Geometric from t_min to split (concentration
// happens near the pole), uniform on [split, pi]. frac_left is the share of
// nodes spent on [0, split].
std::vector<double> zonal_grid(std::size_t n_nodes, double t_min,
                               double split = 0.5, double frac_left = 0.7);

// Composite Simpson on a nonuniform grid: exact quadratic per node pair, and
// a one-sided quadratic on a trailing odd interval. Fourth order when
// adjacent spacings vary smoothly (true for the grids above).
double nodal_integral(const std::vector<double>& x,
                      const std::vector<double>& f);

// Nodal derivative by differentiating the local 5-point Lagrange
// interpolant (stencil clamped at the ends). Fourth order on smooth grids;
// this is what the 1e-6 sampled-vs-analytic agreement at 2000 nodes needs.
std::vector<double> derivative_5pt(const std::vector<double>& x,
                                   const std::vector<double>& f);

}  // namespace lpentropy
