#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpentropy/nash.hpp"
#include "lpentropy/sphere.hpp"

namespace lpentropy {

// Uniform colatitude grid used by descent runs. The penalized functional is
// discretized self-consistently: interval-midpoint fluxes for the gradient
// energy and matching midpoint nodal masses for every volume integral, so
// the discrete stationarity condition coincides with the strong-form
// equation evaluated with the same differences.
std::vector<double> descent_grid(int n_nodes);

double discrete_lp_mass(const ZonalProfile& u, int n, double p);
double discrete_lq_mass(const ZonalProfile& u, int n, double q);
double discrete_dirichlet(const ZonalProfile& u, int n, double p);
ZonalProfile discrete_normalized(const ZonalProfile& u, int n, double p);

// Penalized product functional (dirichlet + C * mass_p) * mass_q^beta with
// beta = p(1-theta)/(q theta), evaluated in log space so q near p stays
// finite. Requires unit discrete L^p mass.
double j_functional(const ZonalProfile& u, int n, double p, double q,
                    double C);

// Mass-weighted norm of the strong-form stationarity residual
//   A_k Lap_p u + A_k C u^{p-1} + ((1-theta)/theta) B_k u^{q-1}
//     - (nu/theta) u^{p-1}
// over interior nodes with u > 0, where A_k, B_k, nu are the multipliers
// implied by u itself. Zero exactly at discrete critical points.
double el_residual_norm(const ZonalProfile& u, int n, double p, double q,
                        double C);

struct DescentBudget {
  int max_iters = 20000;
  double grad_tol = 1e-7; // target for the projected-gradient mass norm
  double el_ok = 1e-4;    // strong-form residual bound certifying "ok"
};

struct MinimizeResult {
  ZonalProfile u_star;
  double nu = 0.0;   // attained J value
  double a_k = 0.0;  // mass_q^beta at the minimizer
  double b_k = 0.0;  // (dirichlet + C mass_p) * mass_q^{beta-1}
  double c = 0.0;
  double el_residual = 0.0;
  int iterations = 0;
  // "ok": converged with el_residual <= el_ok. "maxiter": budget exhausted.
  // "stalled": descent floored without a certificate. "degenerate": gradient
  // converged but the profile is inconsistent with the continuum equation
  // (grid-scale concentration).
  std::string status;
  std::vector<double> j_trace; // accepted values, non-increasing
};

// Normalized constant plus a small polar cap, the default descent start.
ZonalProfile default_init(int n, double p, int n_nodes = 2000,
                          double bump = 0.05);

// Projected descent over nodal values: mass-preconditioned gradient,
// tangent-space projection, clamp to u >= 0, renormalize, backtracking line
// search (accepted J values never increase), Barzilai-Borwein step warm
// start. Non-convergence within budget is flagged, partial data retained.
MinimizeResult minimize_j(int n, double p, double q, double C,
                          const ZonalProfile& init,
                          const DescentBudget& budget = {});

struct BTraceRow {
  double q = 0.0;
  double theta = 0.0;
  double n_ref = 0.0;
  double b_hat = 0.0;
  double c_k = 0.0;
  double nu = 0.0;
  double el_residual = 0.0;
  std::string status;
};

struct BTraceOptions {
  ZonalFamily family = ZonalFamily::cap_mixture;
  bool nash_reference = true; // false: skip the estimate, use a0_constant
  NashBudget nash_budget{};
  BSearchBudget sup_budget{};
  DescentBudget descent{};
  int descent_nodes = 2000;
};

// Boundedness probe for the second constant as q -> p^-: for each q the
// smallest B making the manifold Nash inequality hold on the family (with
// gradient coefficient N_ref), the implied penalty C_k = (B - (p-q))/N_ref,
// and the attained minimum of the penalized functional at that C_k.
std::vector<BTraceRow> b_lower_trace(int n, double p,
                                     const std::vector<double>& q_sequence,
                                     std::uint64_t seed,
                                     const BTraceOptions& opts = {});

} // namespace lpentropy
