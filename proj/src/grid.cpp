#include "lpentropy/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lpentropy {

std::vector<double> log_radial_grid(std::size_t n_nodes, double r_max,
                                    double r_min_frac) {
  if (n_nodes < 8) throw std::invalid_argument("log_radial_grid: too few nodes");
  if (!(r_max > 0.0) || !(r_min_frac > 0.0) || !(r_min_frac < 1.0))
    throw std::invalid_argument("log_radial_grid: bad range");
  const std::size_t m = n_nodes - 1;  // nodes 1..m are geometric
  std::vector<double> g(n_nodes);
  g[0] = 0.0;
  const double log_frac = std::log(r_min_frac);
  for (std::size_t i = 1; i <= m; ++i)
    g[i] = r_max * std::exp(log_frac * static_cast<double>(m - i) /
                            static_cast<double>(m - 1));
  g[m] = r_max;
  return g;
}

std::vector<double> zonal_grid(std::size_t n_nodes, double t_min, double split,
                               double frac_left) {
  constexpr double pi = std::numbers::pi;
  if (n_nodes < 16) throw std::invalid_argument("zonal_grid: too few nodes");
  if (!(t_min > 0.0) || !(t_min < split) || !(split < pi))
    throw std::invalid_argument("zonal_grid: bad range");
  const std::size_t n_left =
      std::max<std::size_t>(8, static_cast<std::size_t>(frac_left * n_nodes));
  const std::size_t n_right = n_nodes - 1 - n_left;  // nodes after split
  if (n_right < 4) throw std::invalid_argument("zonal_grid: bad split");

  std::vector<double> g;
  g.reserve(n_nodes);
  g.push_back(0.0);
  const double log_ratio = std::log(split / t_min);
  for (std::size_t i = 0; i < n_left; ++i)
    g.push_back(t_min * std::exp(log_ratio * static_cast<double>(i) /
                                 static_cast<double>(n_left - 1)));
  for (std::size_t i = 1; i <= n_right; ++i)
    g.push_back(split + (pi - split) * static_cast<double>(i) /
                            static_cast<double>(n_right));
  g.back() = pi;
  return g;
}

double nodal_integral(const std::vector<double>& x,
                      const std::vector<double>& f) {
  const std::size_t n = x.size();
  if (f.size() != n || n < 3)
    throw std::invalid_argument("nodal_integral: needs >= 3 matching nodes");
  double total = 0.0;
  std::size_t k = 0;
  for (; k + 2 < n; k += 2) {
    const double h0 = x[k + 1] - x[k];
    const double h1 = x[k + 2] - x[k + 1];
    const double H = h0 + h1;
    total += (H / 6.0) * ((2.0 - h1 / h0) * f[k] + (H * H / (h0 * h1)) * f[k + 1] +
                          (2.0 - h0 / h1) * f[k + 2]);
  }
  if (k + 2 == n) {
    // one interval left: quadratic through the last three nodes, integrated
    // over the final interval only
    const double a = x[n - 2] - x[n - 3];
    const double b = x[n - 1] - x[n - 2];
    const double c0 = -b * b * b / (6.0 * a * (a + b));
    const double c1 = b * b / (6.0 * a) + 0.5 * b;
    const double c2 = (2.0 * b * b + 3.0 * a * b) / (6.0 * (a + b));
    total += c0 * f[n - 3] + c1 * f[n - 2] + c2 * f[n - 1];
  }
  return total;
}

std::vector<double> derivative_5pt(const std::vector<double>& x,
                                   const std::vector<double>& f) {
  const std::size_t n = x.size();
  if (f.size() != n || n < 5)
    throw std::invalid_argument("derivative_5pt: needs >= 5 matching nodes");
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j0 = (i < 2) ? 0 : i - 2;
    if (j0 + 5 > n) j0 = n - 5;
    double di = 0.0;
    for (std::size_t j = j0; j < j0 + 5; ++j) {
      // L_j'(x_i) for the Lagrange basis on the 5-node stencil
      double wj = 0.0;
      for (std::size_t m = j0; m < j0 + 5; ++m) {
        if (m == j) continue;
        double prod = 1.0;
        for (std::size_t kk = j0; kk < j0 + 5; ++kk) {
          if (kk == j || kk == m) continue;
          prod *= (x[i] - x[kk]) / (x[j] - x[kk]);
        }
        wj += prod / (x[j] - x[m]);
      }
      di += wj * f[j];
    }
    d[i] = di;
  }
  return d;
}

}  // namespace lpentropy
