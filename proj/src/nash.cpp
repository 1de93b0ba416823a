#include "lpentropy/nash.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include "lpentropy/closedform.hpp"
#include "lpentropy/neldermead.hpp"

namespace lpentropy {
namespace {

// log(||u||_p / ||u||_q) through the mass gap: with M_p = int u^p and
// D = int (u^q - u^p),
//   log(N_p/N_q) = (1/p - 1/q) log M_p - log1p(D/M_p) / q.
// Near q = p the gap integral is the only small quantity, so no cancellation.
double log_norm_ratio(const ParametricProfile& u, int n, double p, double q) {
  const double mp = lp_mass(u, n, p);
  const double d = mass_gap(u, n, p, q);
  return (1.0 / p - 1.0 / q) * std::log(mp) - std::log1p(d / mp) / q;
}

} // namespace

double nash_quotient(const ParametricProfile& u, int n, double p, double q) {
  const double th = theta(n, p, q);
  const double dir = dirichlet(u, n, p);
  if (!(dir > 0.0))
    throw std::invalid_argument("nash_quotient: profile has no gradient energy");
  const double mq = lq_mass(u, n, q);
  const double log_q = (p / th) * log_norm_ratio(u, n, p, q) +
                       (p / q) * std::log(mq) - std::log(dir);
  return std::exp(log_q);
}

NashScanRow estimate_nash_constant(
    int n, double p, double q, RadialFamily family, std::uint64_t seed,
    const NashBudget& budget,
    const std::vector<std::pair<double, double>>& box_override) {
  const double th = theta(n, p, q); // validates (n, p, q) up front
  Rng rng(seed);
  const auto box = box_override.empty() ? family_box(family) : box_override;
  const auto objective = [&](const std::vector<double>& params) {
    ParametricProfile u;
    u.family = family;
    u.params = params;
    try {
      return nash_quotient(u, n, p, q);
    } catch (const std::exception&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  SimplexOptions opts;
  opts.restarts = budget.restarts;
  opts.max_evals = budget.max_evals;
  const SimplexResult best = maximize_simplex(objective, box, rng, opts);

  NashScanRow row;
  row.q = q;
  row.theta = th;
  row.n_hat = best.value;
  row.argmax_params = best.argmax;
  row.optimizer_status = best.flagged ? "flagged" : "ok";
  row.evals = best.evals;
  row.seed = seed;
  return row;
}

double jensen_gap(const ParametricProfile& u, int n, double p, double q) {
  theta(n, p, q);
  const double mp = lp_mass(u, n, p);
  if (std::abs(std::pow(mp, 1.0 / p) - 1.0) > 1e-8)
    throw std::invalid_argument("jensen_gap: profile must have unit L^p norm");
  const double ent = entropy(u, n, p);
  return ((p - q) / p) * ent + std::log1p(mass_gap(u, n, p, q));
}

std::vector<LimitTraceRow>
entropy_limit_trace(const ParametricProfile& u, int n, double p,
                    const std::vector<double>& q_sequence) {
  if (q_sequence.empty())
    throw std::invalid_argument("entropy_limit_trace: empty q sequence");
  for (std::size_t i = 0; i + 1 < q_sequence.size(); ++i)
    if (!(q_sequence[i] < q_sequence[i + 1]))
      throw std::invalid_argument(
          "entropy_limit_trace: q sequence must increase");
  if (!(q_sequence.back() < p))
    throw std::invalid_argument("entropy_limit_trace: q must stay below p");

  const double ent = entropy(u, n, p); // enforces unit L^p norm
  const double target = (p / static_cast<double>(n)) * ent;

  std::vector<LimitTraceRow> rows;
  rows.reserve(q_sequence.size());
  for (double q : q_sequence) {
    theta(n, p, q);
    LimitTraceRow row;
    row.q = q;
    row.target = target;
    row.estimate = (p * p * p / static_cast<double>(n)) *
                   log_norm_ratio(u, n, p, q) / (p - q);
    row.error = row.estimate - target;
    row.flagged = (p - q) < 1e-7;
    rows.push_back(row);
  }
  return rows;
}

std::vector<NashScanRow> monotonicity_scan(int n, double p,
                                           const std::vector<double>& q_grid,
                                           RadialFamily family,
                                           std::uint64_t seed,
                                           const NashBudget& budget) {
  if (q_grid.empty())
    throw std::invalid_argument("monotonicity_scan: empty q grid");
  for (std::size_t i = 0; i + 1 < q_grid.size(); ++i)
    if (!(q_grid[i] < q_grid[i + 1]))
      throw std::invalid_argument("monotonicity_scan: q grid must increase");

  std::vector<std::future<NashScanRow>> pending;
  pending.reserve(q_grid.size());
  for (std::size_t i = 0; i < q_grid.size(); ++i)
    pending.push_back(std::async(
        std::launch::async, [=] {
          return estimate_nash_constant(n, p, q_grid[i], family,
                                        seed + static_cast<std::uint64_t>(i),
                                        budget);
        }));

  std::vector<NashScanRow> rows;
  rows.reserve(q_grid.size());
  for (auto& f : pending) rows.push_back(f.get());
  return rows;
}

} // namespace lpentropy
