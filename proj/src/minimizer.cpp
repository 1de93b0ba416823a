#include "lpentropy/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lpentropy/closedform.hpp"
#include "lpentropy/grid.hpp"
#include "lpentropy/neldermead.hpp"

namespace lpentropy {
namespace {

constexpr double kPi = std::numbers::pi;

// Shared discretization: midpoint flux weights w_{k+1/2} for the energy and
// the matching nodal masses m_i = omega (w_{i-1/2} h_{i-1} + w_{i+1/2} h_i)/2
// so that sum_i m_i = midpoint quadrature of the volume. Pole masses stay
// positive through the half-cell midpoints.
struct Disc {
  int n = 0;
  double omega = 0.0;
  std::vector<double> th;
  std::vector<double> h;    // th[k+1] - th[k]
  std::vector<double> wmid; // sin^{n-1} at interval midpoints
  std::vector<double> m;    // nodal masses, include omega

  explicit Disc(const std::vector<double>& grid, int dim) : n(dim), th(grid) {
    omega = surface_area(n);
    const std::size_t nn = th.size();
    h.resize(nn - 1);
    wmid.resize(nn - 1);
    for (std::size_t k = 0; k + 1 < nn; ++k) {
      h[k] = th[k + 1] - th[k];
      wmid[k] = std::pow(std::sin(0.5 * (th[k] + th[k + 1])), n - 1);
    }
    m.assign(nn, 0.0);
    for (std::size_t k = 0; k + 1 < nn; ++k) {
      const double half = 0.5 * omega * wmid[k] * h[k];
      m[k] += half;
      m[k + 1] += half;
    }
  }

  double mass(const std::vector<double>& u, double expo) const {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      s += m[i] * std::pow(u[i], expo);
    return s;
  }

  // sum m_i (u^q - u^p) without cancellation for q near p
  double mass_gap(const std::vector<double>& u, double p, double q) const {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] <= 0.0) continue;
      const double lu = std::log(u[i]);
      s -= m[i] * std::exp(q * lu) * std::expm1((p - q) * lu);
    }
    return s;
  }

  double dirichlet(const std::vector<double>& u, double p) const {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < u.size(); ++k) {
      const double d = (u[k + 1] - u[k]) / h[k];
      s += wmid[k] * std::pow(std::abs(d), p) * h[k];
    }
    return omega * s;
  }

  double dual_norm(const std::vector<double>& a) const {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += m[i] * a[i] * a[i];
    return std::sqrt(s);
  }
};

double beta_exponent(int n, double p, double q) {
  const double th = theta(n, p, q);
  return p * (1.0 - th) / (q * th);
}

// signed |t|^{p-2} t
double flux(double t, double p) {
  if (p == 2.0) return t;
  if (t == 0.0) return 0.0;
  return std::pow(std::abs(t), p - 1.0) * (t > 0.0 ? 1.0 : -1.0);
}

// regularized |t|^{p-2}, curvature weight for the preconditioner only
double kappa(double t, double p, double mu) {
  if (p == 2.0) return 1.0;
  return std::pow(t * t + mu * mu, 0.5 * (p - 2.0));
}

// in-place tridiagonal solve, overwrites rhs with the solution
void thomas_solve(std::vector<double>& lower, std::vector<double>& diag,
                  std::vector<double>& upper, std::vector<double>& rhs) {
  const std::size_t nn = diag.size();
  for (std::size_t i = 1; i < nn; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[nn - 1] /= diag[nn - 1];
  for (std::size_t i = nn - 1; i-- > 0;)
    rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

struct JParts {
  double dir = 0.0;
  double mp = 0.0;
  double mq = 0.0;
  double gap = 0.0;    // mq - mp, cancellation-free
  double e = 0.0;      // dir + C mp
  double mq_pow = 0.0; // mq^beta
  double j = 0.0;
};

JParts evaluate_j(const Disc& d, const std::vector<double>& u, double p,
                  double q, double beta, double C) {
  JParts parts;
  parts.dir = d.dirichlet(u, p);
  parts.mp = d.mass(u, p);
  parts.gap = d.mass_gap(u, p, q);
  parts.mq = parts.mp + parts.gap;
  parts.e = parts.dir + C * parts.mp;
  // mq^beta in log space: beta diverges as q -> p while log(mq/mp) -> 0
  parts.mq_pow = std::exp(
      beta * (std::log(parts.mp) + std::log1p(parts.gap / parts.mp)));
  parts.j = parts.e * parts.mq_pow;
  return parts;
}

void check_unit_mass(double mp, double p, const char* who) {
  if (std::abs(std::pow(mp, 1.0 / p) - 1.0) > 1e-8)
    throw std::invalid_argument(std::string(who) +
                                ": requires unit discrete L^p mass");
}

std::vector<double> j_gradient(const Disc& d, const std::vector<double>& u,
                               double p, double q, double C,
                               const JParts& parts, double beta) {
  const std::size_t nn = u.size();
  const double mq_pow = parts.mq_pow;
  const double ent_coeff = parts.e * beta * mq_pow / parts.mq; // E beta mq^{b-1}
  std::vector<double> g(nn, 0.0);
  // flux part of dE/du
  for (std::size_t k = 0; k + 1 < nn; ++k) {
    const double dk = (u[k + 1] - u[k]) / d.h[k];
    const double f = d.omega * d.wmid[k] * flux(dk, p) * p;
    g[k] -= f;
    g[k + 1] += f;
  }
  for (std::size_t i = 0; i < nn; ++i) {
    const double up1 = u[i] > 0.0 ? std::pow(u[i], p - 1.0) : 0.0;
    const double uq1 = u[i] > 0.0 ? std::pow(u[i], q - 1.0) : 0.0;
    g[i] = mq_pow * (g[i] + C * p * d.m[i] * up1) +
           ent_coeff * q * d.m[i] * uq1;
  }
  return g;
}

} // namespace

std::vector<double> descent_grid(int n_nodes) {
  if (n_nodes < 16)
    throw std::invalid_argument("descent_grid: need at least 16 nodes");
  std::vector<double> g(n_nodes);
  for (int i = 0; i < n_nodes; ++i)
    g[i] = kPi * static_cast<double>(i) / (n_nodes - 1);
  g.back() = kPi;
  return g;
}

double discrete_lp_mass(const ZonalProfile& u, int n, double p) {
  return Disc(u.grid, n).mass(u.values, p);
}

double discrete_lq_mass(const ZonalProfile& u, int n, double q) {
  return Disc(u.grid, n).mass(u.values, q);
}

double discrete_dirichlet(const ZonalProfile& u, int n, double p) {
  return Disc(u.grid, n).dirichlet(u.values, p);
}

ZonalProfile discrete_normalized(const ZonalProfile& u, int n, double p) {
  const double mass = discrete_lp_mass(u, n, p);
  if (!(mass > 0.0))
    throw std::invalid_argument("discrete_normalized: profile carries no mass");
  std::vector<double> v = u.values;
  const double scale = std::pow(mass, -1.0 / p);
  for (double& x : v) x *= scale;
  return ZonalProfile(u.grid, std::move(v));
}

double j_functional(const ZonalProfile& u, int n, double p, double q,
                    double C) {
  const double beta = beta_exponent(n, p, q);
  const Disc d(u.grid, n);
  const JParts parts = evaluate_j(d, u.values, p, q, beta, C);
  check_unit_mass(parts.mp, p, "j_functional");
  return parts.j;
}

double el_residual_norm(const ZonalProfile& u, int n, double p, double q,
                        double C) {
  const double th = theta(n, p, q);
  const double beta = beta_exponent(n, p, q);
  const Disc d(u.grid, n);
  const JParts parts = evaluate_j(d, u.values, p, q, beta, C);
  check_unit_mass(parts.mp, p, "el_residual_norm");

  const double a_k = parts.mq_pow;
  const double b_k = parts.e * a_k / parts.mq; // E mq^{beta-1}
  const double lambda = parts.j / th;          // nu / theta

  const std::size_t nn = u.values.size();
  std::vector<double> resid(nn, 0.0);
  for (std::size_t i = 1; i + 1 < nn; ++i) {
    const double ui = u.values[i];
    if (ui <= 0.0) continue; // clamped node, complementarity not residual
    const double wi = std::pow(std::sin(u.grid[i]), n - 1);
    const double hbar = 0.5 * (u.grid[i + 1] - u.grid[i - 1]);
    const double dl = (u.values[i] - u.values[i - 1]) / d.h[i - 1];
    const double dr = (u.values[i + 1] - u.values[i]) / d.h[i];
    const double lap = (d.wmid[i - 1] * flux(dl, p) - d.wmid[i] * flux(dr, p)) /
                       (wi * hbar);
    resid[i] = a_k * (lap + C * std::pow(ui, p - 1.0)) +
               ((1.0 - th) / th) * b_k * std::pow(ui, q - 1.0) -
               lambda * std::pow(ui, p - 1.0);
  }
  return d.dual_norm(resid);
}

ZonalProfile default_init(int n, double p, int n_nodes, double bump) {
  const auto grid = descent_grid(n_nodes);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    v[i] = 1.0 + bump * std::exp(-std::pow(grid[i] / 0.2, 2.0));
  return discrete_normalized(ZonalProfile(grid, std::move(v)), n, p);
}

MinimizeResult minimize_j(int n, double p, double q, double C,
                          const ZonalProfile& init,
                          const DescentBudget& budget) {
  const double beta = beta_exponent(n, p, q);
  const Disc d(init.grid, n);
  std::vector<double> u = init.values;
  {
    const double mp = d.mass(u, p);
    check_unit_mass(mp, p, "minimize_j");
    const double scale = std::pow(mp, -1.0 / p);
    for (double& x : u) x *= scale; // exact unit mass for the descent
  }

  const std::size_t nn = u.size();
  JParts parts = evaluate_j(d, u, p, q, beta, C);

  MinimizeResult result{ZonalProfile(init.grid, u), 0.0, 0.0, 0.0, C,
                        0.0,  0,                    "ok", {}};
  result.j_trace.push_back(parts.j);

  auto projected_gradient = [&](const std::vector<double>& w,
                                const JParts& jp) {
    std::vector<double> ghat = j_gradient(d, w, p, q, C, jp, beta);
    double num = 0.0, den = 0.0;
    std::vector<double> rho(nn);
    for (std::size_t i = 0; i < nn; ++i) {
      rho[i] = w[i] > 0.0 ? std::pow(w[i], p - 1.0) : 0.0;
      num += ghat[i] * rho[i];
      den += d.m[i] * rho[i] * rho[i];
    }
    const double lam = num / den;
    for (std::size_t i = 0; i < nn; ++i)
      ghat[i] = ghat[i] / d.m[i] - lam * rho[i];
    return ghat;
  };

  std::vector<double> ghat = projected_gradient(u, parts);
  double gnorm = d.dual_norm(ghat);

  // Preconditioned direction: solve (p(p-1) mq^b K + sigma M) z = M ghat with
  // K the flux-linearized stiffness (tridiagonal, Thomas solve), then project
  // back onto the constraint tangent. Keeps the step scale N-independent; the
  // stiffness alone has condition number O(N^2).
  std::vector<double> lo(nn), di(nn), up(nn), rho(nn);
  auto direction = [&](const std::vector<double>& w, const JParts& jp,
                       const std::vector<double>& gh) {
    double dmax = 0.0;
    for (std::size_t k = 0; k + 1 < nn; ++k)
      dmax = std::max(dmax, std::abs((w[k + 1] - w[k]) / d.h[k]));
    const double mu = 1e-8 + 1e-6 * dmax;
    const double scale = p * (p - 1.0) * jp.mq_pow;
    const double ent_coeff = jp.e * beta * jp.mq_pow / jp.mq;
    std::fill(lo.begin(), lo.end(), 0.0);
    std::fill(up.begin(), up.end(), 0.0);
    // positive part of the low-order curvature keeps the operator SPD
    for (std::size_t i = 0; i < nn; ++i) {
      double sigma = 1.0;
      if (w[i] > 0.0) {
        sigma += std::max(0.0, jp.mq_pow * C * p * (p - 1.0) *
                                   std::pow(w[i], p - 2.0));
        sigma += std::max(0.0,
                          ent_coeff * q * (q - 1.0) * std::pow(w[i], q - 2.0));
      }
      di[i] = sigma * d.m[i];
    }
    std::vector<double> z(nn);
    for (std::size_t k = 0; k + 1 < nn; ++k) {
      const double dk = (w[k + 1] - w[k]) / d.h[k];
      const double c =
          scale * d.omega * d.wmid[k] * kappa(dk, p, mu) / d.h[k];
      di[k] += c;
      di[k + 1] += c;
      up[k] = -c;
      lo[k + 1] = -c;
    }
    for (std::size_t i = 0; i < nn; ++i) z[i] = d.m[i] * gh[i];
    thomas_solve(lo, di, up, z);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < nn; ++i) {
      rho[i] = w[i] > 0.0 ? std::pow(w[i], p - 1.0) : 0.0;
      num += d.m[i] * z[i] * rho[i];
      den += d.m[i] * rho[i] * rho[i];
    }
    const double lam = num / den;
    for (std::size_t i = 0; i < nn; ++i) z[i] -= lam * rho[i];
    return z;
  };

  std::vector<double> dvec = direction(u, parts, ghat);
  int iter = 0;
  for (; iter < budget.max_iters; ++iter) {
    if (gnorm / p <= budget.grad_tol) break;

    double gd = 0.0; // decrease rate along dvec, positive by SPD solve
    for (std::size_t i = 0; i < nn; ++i) gd += d.m[i] * ghat[i] * dvec[i];
    if (!(gd > 0.0)) {
      dvec = ghat;
      gd = gnorm * gnorm;
    }

    double t = 1.0;
    bool accepted = false;
    std::vector<double> trial(nn);
    JParts trial_parts;
    for (int back = 0; back < 60; ++back) {
      for (std::size_t i = 0; i < nn; ++i)
        trial[i] = std::max(u[i] - t * dvec[i], 0.0);
      const double mp = d.mass(trial, p);
      if (mp > 0.0) {
        const double s = std::pow(mp, -1.0 / p);
        for (double& x : trial) x *= s;
        trial_parts = evaluate_j(d, trial, p, q, beta, C);
        if (std::isfinite(trial_parts.j) &&
            trial_parts.j <= parts.j - 1e-4 * t * gd) {
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!accepted) {
      // Armijo exhausted: the descent hit the double-precision floor of J.
      result.status = "stalled";
      break;
    }

    u = trial;
    parts = trial_parts;
    result.j_trace.push_back(parts.j);
    ghat = projected_gradient(u, parts);
    gnorm = d.dual_norm(ghat);
    dvec = direction(u, parts, ghat);
  }
  if (iter == budget.max_iters && gnorm / p > budget.grad_tol)
    result.status = "maxiter";

  result.iterations = iter;
  result.u_star = ZonalProfile(init.grid, u);
  result.nu = parts.j;
  result.a_k = parts.mq_pow;
  result.b_k = parts.e * result.a_k / parts.mq;
  result.el_residual = el_residual_norm(result.u_star, n, p, q, C);
  // the strong-form residual is the final certificate for both exits: a
  // floored descent can still be at the minimizer, and a converged gradient
  // can sit on a grid-scale spike the continuum equation rejects
  if (result.status == "stalled" && result.el_residual <= budget.el_ok)
    result.status = "ok";
  else if (result.status == "ok" && result.el_residual > budget.el_ok)
    result.status = "degenerate";
  return result;
}

std::vector<BTraceRow> b_lower_trace(int n, double p,
                                     const std::vector<double>& q_sequence,
                                     std::uint64_t seed,
                                     const BTraceOptions& opts) {
  if (q_sequence.empty())
    throw std::invalid_argument("b_lower_trace: empty q sequence");
  for (std::size_t i = 0; i + 1 < q_sequence.size(); ++i)
    if (!(q_sequence[i] < q_sequence[i + 1]))
      throw std::invalid_argument("b_lower_trace: q sequence must increase");
  if (!(q_sequence.back() < p))
    throw std::invalid_argument("b_lower_trace: q must stay below p");

  std::vector<BTraceRow> rows;
  rows.reserve(q_sequence.size());

  const auto grid = zonal_grid(opts.sup_budget.n_nodes, 1e-5);
  const ZonalProfile init = default_init(n, p, opts.descent_nodes);

  for (std::size_t qi = 0; qi < q_sequence.size(); ++qi) {
    const double q = q_sequence[qi];
    BTraceRow row;
    row.q = q;
    row.theta = theta(n, p, q);
    row.status = "ok";

    if (opts.nash_reference) {
      const NashScanRow ref = estimate_nash_constant(
          n, p, q, RadialFamily::stretched_exp,
          seed + 1000 * static_cast<std::uint64_t>(qi), opts.nash_budget);
      row.n_ref = ref.n_hat;
      if (ref.optimizer_status != "ok") row.status = "flagged";
    } else {
      row.n_ref = a0_constant(n, p);
    }

    // B_hat(q): smallest additive constant over the family, log-space power
    const double beta = beta_exponent(n, p, q);
    const auto objective = [&](const std::vector<double>& params) {
      try {
        const ZonalProfile u = normalized(
            zonal_family_member(opts.family, params, grid, n, p), n, p);
        const double mq = sphere_lp_mass(u, n, q);
        return std::exp(-beta * std::log(mq)) -
               row.n_ref * sphere_dirichlet(u, n, p);
      } catch (const std::exception&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    };
    const double constant_candidate =
        std::pow(sphere_volume(n), -p / static_cast<double>(n));
    row.b_hat = constant_candidate;
    if (opts.family != ZonalFamily::constant) {
      Rng rng(seed + 1000 * static_cast<std::uint64_t>(qi) + 7);
      SimplexOptions sopts;
      sopts.restarts = opts.sup_budget.restarts;
      sopts.max_evals = opts.sup_budget.max_evals;
      const SimplexResult best =
          maximize_simplex(objective, zonal_family_box(opts.family), rng,
                           sopts);
      if (best.flagged) row.status = "flagged";
      row.b_hat = std::max(row.b_hat, best.value);
    }

    row.c_k = (row.b_hat - (p - q)) / row.n_ref;
    const MinimizeResult mr = minimize_j(n, p, q, row.c_k, init, opts.descent);
    row.nu = mr.nu;
    row.el_residual = mr.el_residual;
    if (mr.status != "ok") row.status = "flagged";
    rows.push_back(row);
  }
  return rows;
}

} // namespace lpentropy
