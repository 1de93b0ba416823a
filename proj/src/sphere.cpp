#include "lpentropy/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "lpentropy/closedform.hpp"
#include "lpentropy/grid.hpp"
#include "lpentropy/neldermead.hpp"

namespace lpentropy {
namespace {

constexpr double kPi = std::numbers::pi;

void validate_np(int n, double p) {
  Params params;
  params.n = n;
  params.p = p;
  params.validate();
}

// C^1 ramp: 1 on [0, delta/2], 0 beyond delta.
double cutoff(double theta, double delta) {
  if (theta <= 0.5 * delta) return 1.0;
  if (theta >= delta) return 0.0;
  const double t = (theta - 0.5 * delta) / (0.5 * delta);
  return 1.0 - t * t * (3.0 - 2.0 * t);
}

std::vector<double> weighted_power(const ZonalProfile& u, int n, double p) {
  std::vector<double> f(u.grid.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = std::pow(u.values[i], p) * zonal_weight(n, u.grid[i]);
  return f;
}

} // namespace

double sphere_volume(int n) {
  if (n < 2) throw std::invalid_argument("sphere_volume: requires n >= 2");
  return surface_area(n + 1);
}

double scalar_curvature(int n) {
  return static_cast<double>(n) * (n - 1);
}

double curvature_reference(int n) {
  return (n - 1) / (2.0 * kPi * std::numbers::e);
}

double zonal_weight(int n, double theta) {
  return surface_area(n) * std::pow(std::sin(theta), n - 1);
}

ZonalProfile::ZonalProfile(std::vector<double> g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (grid.size() != values.size() || grid.size() < 5)
    throw std::invalid_argument("ZonalProfile: need >= 5 matched nodes");
  if (grid.front() != 0.0)
    throw std::invalid_argument("ZonalProfile: grid must start at 0");
  if (std::abs(grid.back() - kPi) > 1e-9)
    throw std::invalid_argument("ZonalProfile: grid must end at pi");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("ZonalProfile: grid must increase strictly");
  bool any_positive = false;
  for (double x : values) {
    if (!std::isfinite(x) || x < 0.0)
      throw std::invalid_argument(
          "ZonalProfile: values must be finite and >= 0");
    any_positive = any_positive || x > 0.0;
  }
  if (!any_positive)
    throw std::invalid_argument("ZonalProfile: profile vanishes identically");
}

double sphere_lp_mass(const ZonalProfile& u, int n, double p) {
  validate_np(n, p);
  return nodal_integral(u.grid, weighted_power(u, n, p));
}

double sphere_dirichlet(const ZonalProfile& u, int n, double p) {
  validate_np(n, p);
  const std::vector<double> du = derivative_5pt(u.grid, u.values);
  std::vector<double> f(u.grid.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = std::pow(std::abs(du[i]), p) * zonal_weight(n, u.grid[i]);
  return nodal_integral(u.grid, f);
}

double sphere_entropy(const ZonalProfile& u, int n, double p) {
  validate_np(n, p);
  std::vector<double> f(u.grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = u.values[i];
    f[i] = v > 0.0
               ? std::pow(v, p) * p * std::log(v) * zonal_weight(n, u.grid[i])
               : 0.0;
  }
  return nodal_integral(u.grid, f);
}

ZonalProfile normalized(const ZonalProfile& u, int n, double p) {
  const double mass = sphere_lp_mass(u, n, p);
  if (!(mass > 0.0))
    throw std::invalid_argument("normalized: profile carries no mass");
  const double scale = std::pow(mass, -1.0 / p);
  std::vector<double> v = u.values;
  for (double& x : v) x *= scale;
  return ZonalProfile(u.grid, std::move(v));
}

FunctionalReport sphere_functionals(const ZonalProfile& u, int n, double p) {
  FunctionalReport report;
  report.lp_mass = sphere_lp_mass(u, n, p);
  report.entropy = sphere_entropy(u, n, p);
  report.dirichlet = sphere_dirichlet(u, n, p);
  report.deficit = std::numeric_limits<double>::quiet_NaN();
  report.params.n = n;
  report.params.p = p;
  report.source = "zonal_quadrature";
  return report;
}

void BubbleSpec::validate() const {
  validate_np(n, p);
  if (!(eps > 0.0)) throw std::invalid_argument("BubbleSpec: eps must be > 0");
  if (!(delta > 0.0 && delta < 0.5 * kPi))
    throw std::invalid_argument("BubbleSpec: delta must lie in (0, pi/2)");
  if (!(eps <= 0.25 * delta))
    throw std::invalid_argument("BubbleSpec: requires eps <= delta/4");
  if (n_nodes < 200)
    throw std::invalid_argument("BubbleSpec: n_nodes too small");
}

ZonalProfile make_bubble(const BubbleSpec& spec) {
  spec.validate();
  const ExtremalSpec ext = extremal_spec(spec.n, spec.p);
  const double scale = std::pow(spec.eps, -spec.n / spec.p);
  const auto grid = zonal_grid(spec.n_nodes, spec.eps * 1e-3);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i] / spec.eps;
    values[i] = cutoff(grid[i], spec.delta) * scale * ext.a *
                std::exp(-std::pow(r, ext.s));
  }
  return ZonalProfile(grid, std::move(values));
}

std::string observable_name(Observable obs) {
  switch (obs) {
    case Observable::mass: return "mass";
    case Observable::entropy: return "entropy";
    case Observable::energy: return "energy";
  }
  throw std::logic_error("observable_name: unreachable");
}

Observable observable_from_name(const std::string& name) {
  if (name == "mass") return Observable::mass;
  if (name == "entropy") return Observable::entropy;
  if (name == "energy") return Observable::energy;
  throw std::invalid_argument("unknown observable: " + name);
}

ExpansionFit expansion_fit(int n, double p, const std::vector<double>& eps_grid,
                           Observable observable, double delta, int n_nodes) {
  if (eps_grid.size() < 6)
    throw std::invalid_argument("expansion_fit: need at least 6 eps values");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0 && eps_grid[i] <= delta / 4.0))
      throw std::invalid_argument(
          "expansion_fit: eps values must lie in (0, delta/4]");
    if (i > 0 && !(eps_grid[i] > eps_grid[i - 1]))
      throw std::invalid_argument("expansion_fit: eps grid must increase");
  }

  const Moments m = moments(n, p);
  const double big_r = scalar_curvature(n);

  const std::size_t rows = eps_grid.size();
  const std::size_t cols = observable == Observable::entropy ? 3 : 2;
  Eigen::MatrixXd x(rows, cols);
  Eigen::VectorXd y(rows);

  ExpansionFit fit;
  fit.observable = observable;
  fit.eps_grid = eps_grid;
  switch (observable) {
    case Observable::mass:
      fit.predicted = {1.0, -big_r * m.J1 / (6.0 * n)};
      break;
    case Observable::entropy:
      fit.predicted = {m.I1, -big_r * m.J3 / (6.0 * n), big_r * m.J1 / 6.0};
      break;
    case Observable::energy:
      fit.predicted = {m.I2, -big_r * m.J2 / (6.0 * n)};
      break;
  }

  for (std::size_t i = 0; i < rows; ++i) {
    const double eps = eps_grid[i];
    BubbleSpec spec;
    spec.n = n;
    spec.p = p;
    spec.eps = eps;
    spec.delta = delta;
    spec.n_nodes = n_nodes;
    const ZonalProfile u = make_bubble(spec);

    x(i, 0) = 1.0;
    x(i, 1) = eps * eps;
    if (observable == Observable::entropy) x(i, 2) = eps * eps * std::log(eps);

    switch (observable) {
      case Observable::mass:
        y(i) = sphere_lp_mass(u, n, p);
        break;
      case Observable::entropy:
        y(i) = sphere_entropy(u, n, p) + n * std::log(eps);
        break;
      case Observable::energy:
        y(i) = std::pow(eps, p) * sphere_dirichlet(u, n, p);
        break;
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU |
                                               Eigen::ComputeThinV);
  const Eigen::VectorXd c = svd.solve(y);
  fit.condition_number =
      svd.singularValues()(0) / svd.singularValues()(cols - 1);
  fit.residual_rms = std::sqrt((x * c - y).squaredNorm() / rows);
  fit.fitted.assign(c.data(), c.data() + cols);
  fit.relative_error.resize(cols);
  for (std::size_t j = 0; j < cols; ++j)
    fit.relative_error[j] =
        std::abs(fit.fitted[j] - fit.predicted[j]) /
        std::max(std::abs(fit.predicted[j]), 1e-300);
  return fit;
}

std::string zonal_family_name(ZonalFamily family) {
  switch (family) {
    case ZonalFamily::constant: return "constant";
    case ZonalFamily::cap_mixture: return "cap_mixture";
    case ZonalFamily::const_bubble: return "const_bubble";
  }
  throw std::logic_error("zonal_family_name: unreachable");
}

ZonalFamily zonal_family_from_name(const std::string& name) {
  if (name == "constant") return ZonalFamily::constant;
  if (name == "cap_mixture") return ZonalFamily::cap_mixture;
  if (name == "const_bubble") return ZonalFamily::const_bubble;
  throw std::invalid_argument("unknown zonal family: " + name);
}

std::vector<std::pair<double, double>> zonal_family_box(ZonalFamily family) {
  switch (family) {
    case ZonalFamily::constant: return {};
    case ZonalFamily::cap_mixture: return {{0.0, 8.0}, {0.05, 1.5}};
    case ZonalFamily::const_bubble: return {{0.0, 2.0}, {0.02, 0.12}};
  }
  throw std::logic_error("zonal_family_box: unreachable");
}

ZonalProfile zonal_family_member(ZonalFamily family,
                                 const std::vector<double>& params,
                                 const std::vector<double>& grid, int n,
                                 double p) {
  if (family == ZonalFamily::constant)
    return ZonalProfile(grid, std::vector<double>(grid.size(), 1.0));
  if (params.size() != 2)
    throw std::invalid_argument("zonal_family_member: expected 2 parameters");
  const double w = params[0];
  const double width = params[1];
  const ExtremalSpec ext = extremal_spec(n, p);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double th = grid[i];
    double shape;
    if (family == ZonalFamily::cap_mixture) {
      shape = std::exp(-(th / width) * (th / width));
    } else {
      shape = cutoff(th, 0.5) * std::pow(width, -n / p) * ext.a *
              std::exp(-std::pow(th / width, ext.s));
    }
    values[i] = 1.0 + w * shape;
  }
  return ZonalProfile(grid, std::move(values));
}

BSearchResult b_search(int n, double p, double A, ZonalFamily family,
                       std::uint64_t seed, const BSearchBudget& budget) {
  validate_np(n, p);
  if (!(A > 0.0)) throw std::invalid_argument("b_search: requires A > 0");

  BSearchResult result;
  result.constant_candidate = std::pow(sphere_volume(n), -p / n);
  result.curvature_comparison = curvature_reference(n);
  result.seed = seed;
  result.status = "ok";

  // the constant function is always a candidate: zero gradient term,
  // exp((p/n) Ent) = volume^{-p/n}
  result.b_hat = result.constant_candidate;
  result.evals = 1;
  if (family == ZonalFamily::constant) return result;

  const auto grid = zonal_grid(budget.n_nodes, 1e-5);

  const auto objective = [&](const std::vector<double>& params) {
    try {
      const ZonalProfile u =
          normalized(zonal_family_member(family, params, grid, n, p), n, p);
      return std::exp((p / n) * sphere_entropy(u, n, p)) -
             A * sphere_dirichlet(u, n, p);
    } catch (const std::exception&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  Rng rng(seed);
  SimplexOptions opts;
  opts.restarts = budget.restarts;
  opts.max_evals = budget.max_evals;
  const SimplexResult best =
      maximize_simplex(objective, zonal_family_box(family), rng, opts);
  result.evals += best.evals;
  if (best.flagged) result.status = "flagged";
  if (best.value > result.b_hat) {
    result.b_hat = best.value;
    result.argmax_params = best.argmax;
  }
  return result;
}

} // namespace lpentropy
