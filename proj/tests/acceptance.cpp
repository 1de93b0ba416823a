// Release gate. Each numbered check exercises one end-to-end contract of the
// laboratory at its shipped tolerance and prints exactly one PASS/FAIL line;
// the exit status is the number of failing checks. Tolerances here are the
// advertised ones, not the (tighter) ones the unit suite pins.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lpentropy/closedform.hpp"
#include "lpentropy/minimizer.hpp"
#include "lpentropy/nash.hpp"
#include "lpentropy/radial.hpp"
#include "lpentropy/report.hpp"
#include "lpentropy/rng.hpp"
#include "lpentropy/sphere.hpp"

namespace {

using namespace lpentropy;

struct Check {
  bool pass = true;
  std::string detail;     // appended to the status line
  std::string data;       // extra lines echoed verbatim (raw inspection data)

  void require(bool ok, const std::string& on_fail) {
    if (!ok && pass) {
      pass = false;
      detail = on_fail;
    }
  }
};

int failures = 0;

// max_seconds <= 0 means the criterion carries no runtime bound.
void run_check(int id, const std::string& label,
               const std::function<void(Check&)>& body,
               double max_seconds = 0.0) {
  Check check;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.pass = false;
    check.detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (max_seconds > 0.0)
    check.require(seconds < max_seconds,
                  "over time budget: " + fmt(seconds) + " s >= " +
                      fmt(max_seconds) + " s");
  failures += check.pass ? 0 : 1;
  std::printf("%s %2d  %-58s %7.2f s%s%s\n", check.pass ? "PASS" : "FAIL", id,
              label.c_str(), seconds,
              check.detail.empty() ? "" : "  -- ", check.detail.c_str());
  if (!check.data.empty()) std::printf("%s", check.data.c_str());
  std::fflush(stdout);
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

// 1: the closed-form extremal profile achieves equality.
void extremal_equality(Check& check) {
  const std::pair<int, double> cases[] = {{3, 2.0}, {4, 2.0}, {3, 1.5}, {5, 2.0}};
  for (const auto& [n, p] : cases) {
    const double deficit = entropy_deficit(extremal_profile(n, p), n, p);
    check.require(std::abs(deficit) < 1e-6,
                  "deficit " + fmt(deficit) + " at n=" + fmt(n) +
                      " p=" + fmt(p));
  }
}

// 2: the sharp constant collapses to 2/(3 pi e) at (3, 2).
void known_constant(Check& check) {
  const double product =
      a0_constant(3, 2.0) * (3.0 * std::numbers::pi * std::numbers::e / 2.0);
  check.require(std::abs(product - 1.0) <= 1e-12,
                "a0(3,2) * 3 pi e / 2 = " + fmt(product));
}

// 3: the deficit of randomized normalized profiles is never meaningfully
// negative. Draws cycle through all three analytic families.
void deficit_nonnegative(Check& check) {
  const RadialFamily families[] = {RadialFamily::stretched_exp,
                                   RadialFamily::gaussian_mixture,
                                   RadialFamily::bump_mixture};
  int worst_index = -1;
  double worst = 0.0;
  for (int n : {3, 4}) {
    for (double p : {1.5, 2.0}) {
      Rng rng(1000 * n + static_cast<int>(10 * p));
      for (int i = 0; i < 200; ++i) {
        const auto u = normalized(random_profile(families[i % 3], rng), n, p);
        const double deficit = entropy_deficit(u, n, p);
        if (deficit < worst) {
          worst = deficit;
          worst_index = i;
        }
      }
    }
  }
  check.require(worst >= -1e-7, "deficit " + fmt(worst) + " at draw " +
                                    fmt(worst_index));
  check.detail = "min deficit " + fmt(worst);
}

// 4: lower bounds grow toward the sharp constant as q -> p.
void nash_sandwich(Check& check) {
  const double a0 = a0_constant(3, 2.0);
  const auto rows = monotonicity_scan(3, 2.0, {1.0, 1.5, 1.8, 1.95, 1.99},
                                      RadialFamily::stretched_exp, 12345);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    check.require(rows[i + 1].n_hat >= rows[i].n_hat * (1.0 - 1e-4),
                  "drop at q=" + fmt(rows[i + 1].q));
  for (const auto& row : rows)
    check.require(row.n_hat <= a0 + 1e-6,
                  "N_hat " + fmt(row.n_hat) + " above A0 at q=" + fmt(row.q));
  check.require(rows.back().n_hat >= 0.9 * a0,
                "final N_hat " + fmt(rows.back().n_hat) + " below 0.9 A0");
  check.detail = "final N_hat / A0 = " + fmt(rows.back().n_hat / a0);
}

// 5: the difference quotient reproduces the entropy limit at first order
// down to the floor where (p - q) hits quotient precision.
void limit_identity(Check& check) {
  const int n = 3;
  const double p = 2.0;
  std::vector<double> grid;
  double gap = 0.1;
  for (int k = 1; k <= 8; ++k, gap /= 10.0) grid.push_back(p - gap);
  const auto rows = entropy_limit_trace(extremal_profile(n, p), n, p, grid);

  const double target = (2.0 / 3.0) * moments(n, p).I1;
  check.require(std::abs(target - (-1.4515827052894549)) < 1e-9,
                "target " + fmt(target));
  for (const auto& row : rows)
    check.require(close_rel(row.target, target, 1e-9),
                  "trace target drifted at q=" + fmt(row.q));
  // First-order rate while the spacing stays above the floor: tenfold
  // smaller gap, tenfold smaller error.
  for (std::size_t k = 0; k + 1 < 7; ++k) {
    const double ratio = rows[k].error / rows[k + 1].error;
    check.require(ratio > 8.0 && ratio < 13.0,
                  "rate ratio " + fmt(ratio) + " at step " + fmt((long long)k));
  }
  check.require(std::abs(rows[6].error) < 1.5e-7,
                "floor error " + fmt(rows[6].error));
  check.require(rows[7].flagged, "sub-floor spacing not flagged");
  check.detail = "error at gap 1e-7: " + fmt(rows[6].error);
}

// 6: concentrating bubbles on S^3 reproduce the predicted expansion
// coefficients of mass and energy.
void bubble_expansions(Check& check) {
  std::vector<double> eps_grid;
  for (double eps = 0.02; eps < 0.0805; eps += 0.005) eps_grid.push_back(eps);

  const auto mass = expansion_fit(3, 2.0, eps_grid, Observable::mass);
  check.require(std::abs(mass.fitted[0] - 1.0) <= 1e-4,
                "mass c0 " + fmt(mass.fitted[0]));
  check.require(close_rel(mass.fitted[1], -0.25, 0.05),
                "mass c2 " + fmt(mass.fitted[1]));

  const auto energy = expansion_fit(3, 2.0, eps_grid, Observable::energy);
  check.require(close_rel(energy.fitted[0], 3.0, 0.01),
                "energy c0 " + fmt(energy.fitted[0]));
  check.detail = "mass c2 = " + fmt(mass.fitted[1]) +
                 ", energy c0 = " + fmt(energy.fitted[0]);
}

// 7: with only the constant function available, the smallest workable
// second constant is exactly the volume term.
void volume_lower_bound(Check& check) {
  const auto result = b_search(3, 2.0, a0_constant(3, 2.0),
                               ZonalFamily::constant, 12345);
  const double target = std::pow(2.0 * std::numbers::pi * std::numbers::pi,
                                 -2.0 / 3.0);
  check.require(std::abs(result.b_hat - target) <= 1e-8,
                "B_hat " + fmt(result.b_hat) + " vs " + fmt(target));
  check.detail = "B_hat = " + fmt(result.b_hat);
}

// 8: converged descents satisfy the multiplier relation, carry a small
// strong-form residual, and never increase the objective.
void minimizer_contracts(Check& check) {
  struct Run {
    double q;
    double c;
  };
  const Run runs[] = {{1.5, -5.337}, {1.8, -0.851}, {1.9, 0.485},
                      {1.9, -1.0},   {1.95, 1.127}, {1.99, 1.63}};
  int converged = 0;
  for (const auto& run : runs) {
    const auto result = minimize_j(3, 2.0, run.q, run.c,
                                   default_init(3, 2.0, 1000));
    if (result.status != "ok") continue;
    ++converged;
    const double mq = discrete_lq_mass(result.u_star, 3, run.q);
    check.require(close_rel(result.nu, result.b_k * mq, 1e-6),
                  "relation off at q=" + fmt(run.q) + " C=" + fmt(run.c));
    check.require(result.el_residual < 1e-4,
                  "EL residual " + fmt(result.el_residual) + " at q=" +
                      fmt(run.q));
    for (std::size_t i = 0; i + 1 < result.j_trace.size(); ++i)
      check.require(result.j_trace[i + 1] <= result.j_trace[i] + 1e-15,
                    "ascent step at q=" + fmt(run.q));
  }
  check.require(converged == 6, "only " + fmt((long long)converged) +
                                    "/6 runs converged");
  check.detail = fmt((long long)converged) + "/6 converged";
}

// 9: the per-q smallest workable second constant stays bounded as q -> p.
void boundedness_probe(Check& check) {
  const auto rows = b_lower_trace(3, 2.0, {1.5, 1.8, 1.9, 1.95, 1.99}, 12345);
  std::vector<double> running_max;
  double so_far = -std::numeric_limits<double>::infinity();
  for (const auto& row : rows) {
    check.require(std::isfinite(row.b_hat) && std::isfinite(row.c_k) &&
                      std::isfinite(row.nu),
                  "non-finite row at q=" + fmt(row.q));
    so_far = std::max(so_far, row.b_hat);
    running_max.push_back(so_far);
  }
  const double last = running_max.back();
  const double third_last = running_max[running_max.size() - 3];
  check.require(std::abs(last - third_last) < 0.10 * std::abs(last),
                "running max moved " + fmt(last - third_last));
  std::ostringstream data;
  for (const auto& row : rows)
    data << "        q=" << fmt(row.q) << " B_hat=" << fmt(row.b_hat)
         << " C_k=" << fmt(row.c_k) << " nu=" << fmt(row.nu)
         << " el=" << fmt(row.el_residual) << " status=" << row.status
         << "\n";
  check.data = data.str();
  check.detail = "running max B_hat = " + fmt(last);
}

// 10: a fixed seed reproduces serialized output byte for byte.
void determinism(Check& check) {
  const auto render = [] {
    TableWriter table({"q", "theta", "N_hat", "evals", "B_hat", "deficit"});
    NashBudget budget;
    budget.restarts = 2;
    budget.max_evals = 120;
    const auto rows = monotonicity_scan(3, 2.0, {1.5, 1.9},
                                        RadialFamily::stretched_exp, 777,
                                        budget);
    BSearchBudget sup_budget;
    sup_budget.restarts = 2;
    sup_budget.max_evals = 100;
    sup_budget.n_nodes = 500;
    const auto sup = b_search(3, 2.0, a0_constant(3, 2.0),
                              ZonalFamily::cap_mixture, 777, sup_budget);
    Rng rng(777);
    const auto u =
        normalized(random_profile(RadialFamily::gaussian_mixture, rng), 3, 2.0);
    for (const auto& row : rows)
      table.add_row({row.q, row.theta, row.n_hat, row.evals, sup.b_hat,
                     entropy_deficit(u, 3, 2.0)});
    return table.csv();
  };
  const std::string first = render();
  const std::string second = render();
  check.require(first == second, "reruns differ");
  check.detail = fmt((long long)first.size()) + " bytes stable";
}

} // namespace

int main() {
  std::printf("acceptance gate: sharp-constant laboratory\n");
  run_check(1, "extremal deficit < 1e-6 at (3,2),(4,2),(3,1.5),(5,2)",
            extremal_equality, 5.0);
  run_check(2, "a0(3,2) * (3 pi e / 2) = 1 within 1e-12", known_constant);
  run_check(3, "800 random profile deficits >= -1e-7", deficit_nonnegative,
            60.0);
  run_check(4, "Nash bounds non-decreasing, <= A0, final >= 0.9 A0",
            nash_sandwich, 600.0);
  run_check(5, "entropy limit trace first-order down to 1e-7 floor",
            limit_identity);
  run_check(6, "bubble mass/energy expansion coefficients on S^3",
            bubble_expansions, 120.0);
  run_check(7, "constant-family second constant = (2 pi^2)^(-2/3)",
            volume_lower_bound);
  run_check(8, "descent runs: multiplier relation, EL < 1e-4, monotone",
            minimizer_contracts);
  run_check(9, "second-constant trace bounded as q -> 2", boundedness_probe);
  run_check(10, "fixed seed reproduces identical CSV bytes", determinism);
  if (failures == 0)
    std::printf("acceptance gate: all 10 criteria pass\n");
  else
    std::printf("acceptance gate: %d criteria FAIL\n", failures);
  return failures;
}
