// Python bindings for the main operations: closed-form constants, deficit
// evaluation, Nash-constant scans, the q -> p entropy limit, sphere bubble
// expansions, second-constant searches, and the penalized-functional descent.
// Structured results come back as plain dicts so callers can feed them
// straight into csv/json/pandas without binding-specific types.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpentropy/closedform.hpp"
#include "lpentropy/minimizer.hpp"
#include "lpentropy/nash.hpp"
#include "lpentropy/radial.hpp"
#include "lpentropy/sphere.hpp"
#include "lpentropy/version.hpp"

namespace py = pybind11;

namespace {

using namespace lpentropy;

void validate_np(int n, double p) {
  Params params;
  params.n = n;
  params.p = p;
  params.validate();
}

py::dict nash_row_to_dict(const NashScanRow& row) {
  py::dict d;
  d["q"] = row.q;
  d["theta"] = row.theta;
  d["N_hat"] = row.n_hat;
  d["argmax_params"] = row.argmax_params;
  d["evals"] = row.evals;
  d["seed"] = row.seed;
  d["status"] = row.optimizer_status;
  return d;
}

py::dict deficit_report(const ParametricProfile& u, int n, double p) {
  const FunctionalReport r = functional_report(u, n, p);
  py::dict d;
  d["entropy"] = r.entropy;
  d["dirichlet"] = r.dirichlet;
  d["deficit"] = r.deficit;
  return d;
}

} // namespace

PYBIND11_MODULE(_lpentropy, m) {
  using namespace lpentropy;

  m.doc() = "Sharp-constant laboratory for L^p entropy and Nash inequalities "
            "on R^n and the round sphere";
  m.attr("__version__") = version;

  // --- closed forms ---
  m.def("a0_constant", &a0_constant, py::arg("n"), py::arg("p"),
        "Sharp constant of the Euclidean L^p entropy inequality.");
  m.def("theta", &theta, py::arg("n"), py::arg("p"), py::arg("q"),
        "Interpolation exponent n(p-q)/(qp - qn + np).");
  m.def("surface_area", &surface_area, py::arg("n"),
        "Surface area of the unit sphere S^{n-1} in R^n.");
  m.def("sphere_volume", &sphere_volume, py::arg("n"),
        "Volume of the unit round S^n.");
  m.def("curvature_reference", &curvature_reference, py::arg("n"),
        "Curvature comparison level (n-1)/(2 pi e) for the second constant "
        "at p = 2.");
  m.def(
      "extremal_spec",
      [](int n, double p) {
        validate_np(n, p);
        const ExtremalSpec spec = extremal_spec(n, p);
        py::dict d;
        d["a"] = spec.a;
        d["b"] = spec.b;
        d["s"] = spec.s;
        return d;
      },
      py::arg("n"), py::arg("p"),
      "Amplitude, decay, and exponent of the unit-mass extremal "
      "a exp(-b r^s).");
  m.def(
      "moments",
      [](int n, double p) {
        validate_np(n, p);
        const Moments mom = moments(n, p);
        py::dict d;
        d["I1"] = mom.I1;
        d["I2"] = mom.I2;
        d["J1"] = mom.J1;
        d["J2"] = mom.J2;
        d["J3"] = mom.J3;
        return d;
      },
      py::arg("n"), py::arg("p"),
      "Entropy, Dirichlet, and weighted moment integrals of the extremal.");

  // --- Euclidean deficit ---
  m.def(
      "extremal_deficit",
      [](int n, double p) {
        validate_np(n, p);
        return entropy_deficit(extremal_profile(n, p), n, p);
      },
      py::arg("n"), py::arg("p"),
      "Entropy deficit of the closed-form extremal; zero up to quadrature.");
  m.def(
      "deficit_report",
      [](int n, double p, const std::string& family, std::uint64_t seed) {
        validate_np(n, p);
        if (family == "extremal")
          return deficit_report(extremal_profile(n, p), n, p);
        Rng rng(seed);
        const auto u =
            normalized(random_profile(family_from_name(family), rng), n, p);
        return deficit_report(u, n, p);
      },
      py::arg("n"), py::arg("p"), py::arg("family") = "extremal",
      py::arg("seed") = 12345,
      "Entropy, Dirichlet energy, and deficit of one normalized profile.");
  m.def(
      "deficit_samples",
      [](int n, double p, const std::string& family, int count,
         std::uint64_t seed) {
        validate_np(n, p);
        if (count < 1) throw std::invalid_argument("requires count >= 1");
        Rng rng(seed);
        const RadialFamily fam = family_from_name(family);
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i)
          out.push_back(
              entropy_deficit(normalized(random_profile(fam, rng), n, p), n, p));
        return out;
      },
      py::arg("n"), py::arg("p"), py::arg("family") = "gaussian_mixture",
      py::arg("count") = 200, py::arg("seed") = 12345,
      "Deficits of seeded random normalized profiles; every value should be "
      ">= 0 up to quadrature error.");

  // --- Nash constants ---
  m.def(
      "nash_constant",
      [](int n, double p, double q, const std::string& family,
         std::uint64_t seed, int restarts, int max_evals) {
        Params params;
        params.n = n;
        params.p = p;
        params.q = q;
        params.validate();
        NashBudget budget;
        budget.restarts = restarts;
        budget.max_evals = max_evals;
        return nash_row_to_dict(estimate_nash_constant(
            n, p, q, family_from_name(family), seed, budget));
      },
      py::arg("n"), py::arg("p"), py::arg("q"),
      py::arg("family") = "stretched_exp", py::arg("seed") = 12345,
      py::arg("restarts") = 8, py::arg("max_evals") = 400,
      "Lower bound for the sharp Nash constant from a seeded multi-start "
      "search over one profile family.");
  m.def(
      "nash_scan",
      [](int n, double p, const std::vector<double>& q_grid,
         const std::string& family, std::uint64_t seed, int restarts,
         int max_evals) {
        validate_np(n, p);
        NashBudget budget;
        budget.restarts = restarts;
        budget.max_evals = max_evals;
        py::list rows;
        for (const auto& row : monotonicity_scan(
                 n, p, q_grid, family_from_name(family), seed, budget))
          rows.append(nash_row_to_dict(row));
        return rows;
      },
      py::arg("n"), py::arg("p"), py::arg("q_grid"),
      py::arg("family") = "stretched_exp", py::arg("seed") = 12345,
      py::arg("restarts") = 8, py::arg("max_evals") = 400,
      "nash_constant on every grid point, merged in q order with "
      "per-row derived seeds.");
  m.def(
      "limit_trace",
      [](int n, double p, const std::optional<std::vector<double>>& q_grid) {
        validate_np(n, p);
        std::vector<double> grid;
        if (q_grid) {
          grid = *q_grid;
        } else {
          double gap = 0.1;
          for (int k = 1; k <= 7; ++k, gap /= 10.0) grid.push_back(p - gap);
        }
        py::list rows;
        for (const auto& r :
             entropy_limit_trace(extremal_profile(n, p), n, p, grid)) {
          py::dict d;
          d["q"] = r.q;
          d["estimate"] = r.estimate;
          d["target"] = r.target;
          d["error"] = r.error;
          d["status"] = r.flagged ? "flagged" : "ok";
          rows.append(d);
        }
        return rows;
      },
      py::arg("n"), py::arg("p"), py::arg("q_grid") = std::nullopt,
      "Difference-quotient trace of the q -> p entropy limit on the "
      "extremal; default grid is p - 10^-k, k = 1..7.");

  // --- sphere ---
  m.def(
      "bubble_fit",
      [](int n, double p, const std::string& observable,
         const std::optional<std::vector<double>>& eps_grid, double delta,
         int n_nodes) {
        validate_np(n, p);
        std::vector<double> grid;
        if (eps_grid) {
          grid = *eps_grid;
        } else {
          for (double eps = 0.02; eps < 0.0805; eps += 0.005)
            grid.push_back(eps);
        }
        const ExpansionFit fit = expansion_fit(
            n, p, grid, observable_from_name(observable), delta, n_nodes);
        py::dict d;
        d["observable"] = observable_name(fit.observable);
        d["eps_grid"] = fit.eps_grid;
        d["fitted"] = fit.fitted;
        d["predicted"] = fit.predicted;
        d["relative_error"] = fit.relative_error;
        d["residual_rms"] = fit.residual_rms;
        d["condition_number"] = fit.condition_number;
        return d;
      },
      py::arg("n"), py::arg("p"), py::arg("observable") = "mass",
      py::arg("eps_grid") = std::nullopt, py::arg("delta") = 0.5,
      py::arg("n_nodes") = 4000,
      "Least-squares small-eps expansion of one bubble observable against "
      "its closed-form prediction.");
  m.def(
      "b_search",
      [](int n, double p, const std::optional<double>& A,
         const std::string& family, std::uint64_t seed, int restarts,
         int max_evals, int n_nodes) {
        validate_np(n, p);
        BSearchBudget budget;
        budget.restarts = restarts;
        budget.max_evals = max_evals;
        budget.n_nodes = n_nodes;
        const double a_value = A ? *A : a0_constant(n, p);
        const BSearchResult r = b_search(
            n, p, a_value, zonal_family_from_name(family), seed, budget);
        py::dict d;
        d["A"] = a_value;
        d["B_hat"] = r.b_hat;
        d["constant_candidate"] = r.constant_candidate;
        d["curvature_comparison"] = r.curvature_comparison;
        d["argmax_params"] = r.argmax_params;
        d["evals"] = r.evals;
        d["seed"] = r.seed;
        d["status"] = r.status;
        return d;
      },
      py::arg("n"), py::arg("p"), py::arg("A") = std::nullopt,
      py::arg("family") = "cap_mixture", py::arg("seed") = 12345,
      py::arg("restarts") = 8, py::arg("max_evals") = 400,
      py::arg("n_nodes") = 2000,
      "Smallest additive constant making the two-constant inequality hold "
      "on one zonal family; A defaults to a0_constant(n, p).");

  // --- descent ---
  m.def(
      "minimize_j",
      [](int n, double p, double q, double C, int n_nodes, double bump,
         int max_iters, double grad_tol, double el_ok) {
        Params params;
        params.n = n;
        params.p = p;
        params.q = q;
        params.validate();
        DescentBudget budget;
        budget.max_iters = max_iters;
        budget.grad_tol = grad_tol;
        budget.el_ok = el_ok;
        const MinimizeResult r =
            minimize_j(n, p, q, C, default_init(n, p, n_nodes, bump), budget);
        py::dict d;
        d["nu"] = r.nu;
        d["a_k"] = r.a_k;
        d["b_k"] = r.b_k;
        d["C"] = r.c;
        d["el_residual"] = r.el_residual;
        d["iterations"] = r.iterations;
        d["status"] = r.status;
        d["j_trace"] = r.j_trace;
        return d;
      },
      py::arg("n"), py::arg("p"), py::arg("q"), py::arg("C"),
      py::arg("n_nodes") = 2000, py::arg("bump") = 0.05,
      py::arg("max_iters") = 20000, py::arg("grad_tol") = 1e-7,
      py::arg("el_ok") = 1e-4,
      "Projected descent on the penalized product functional from the "
      "default constant-plus-cap start.");
  m.def(
      "b_lower_trace",
      [](int n, double p, const std::vector<double>& q_grid,
         std::uint64_t seed, const std::string& family, bool nash_reference,
         int restarts, int max_evals, int sup_restarts, int sup_max_evals,
         int sup_nodes, int descent_nodes, int max_iters, double grad_tol,
         double el_ok) {
        validate_np(n, p);
        BTraceOptions opts;
        opts.family = zonal_family_from_name(family);
        opts.nash_reference = nash_reference;
        opts.nash_budget.restarts = restarts;
        opts.nash_budget.max_evals = max_evals;
        opts.sup_budget.restarts = sup_restarts;
        opts.sup_budget.max_evals = sup_max_evals;
        opts.sup_budget.n_nodes = sup_nodes;
        opts.descent.max_iters = max_iters;
        opts.descent.grad_tol = grad_tol;
        opts.descent.el_ok = el_ok;
        opts.descent_nodes = descent_nodes;
        py::list rows;
        for (const auto& r : b_lower_trace(n, p, q_grid, seed, opts)) {
          py::dict d;
          d["q"] = r.q;
          d["theta"] = r.theta;
          d["N_ref"] = r.n_ref;
          d["B_hat"] = r.b_hat;
          d["C_k"] = r.c_k;
          d["nu"] = r.nu;
          d["el_residual"] = r.el_residual;
          d["status"] = r.status;
          rows.append(d);
        }
        return rows;
      },
      py::arg("n"), py::arg("p"), py::arg("q_grid"), py::arg("seed") = 12345,
      py::arg("family") = "cap_mixture", py::arg("nash_reference") = true,
      py::arg("restarts") = 8, py::arg("max_evals") = 400,
      py::arg("sup_restarts") = 8, py::arg("sup_max_evals") = 400,
      py::arg("sup_nodes") = 2000, py::arg("descent_nodes") = 2000,
      py::arg("max_iters") = 20000, py::arg("grad_tol") = 1e-7,
      py::arg("el_ok") = 1e-4,
      "Boundedness probe for the second constant as q -> p: per-q smallest "
      "B on the family, implied penalty level, and the attained minimum of "
      "the penalized functional.");
}
