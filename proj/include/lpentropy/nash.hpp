#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpentropy/radial.hpp"

namespace lpentropy {

struct NashScanRow {
  double q = 0.0;
  double theta = 0.0;
  double n_hat = 0.0; // lower bound for the sharp Nash constant
  std::vector<double> argmax_params;
  std::string optimizer_status; // "ok" or "flagged"
  long long evals = 0;
  std::uint64_t seed = 0;
};

struct NashBudget {
  int restarts = 8;
  int max_evals = 400; // per restart
};

// Scale- and dilation-invariant Nash quotient
//   Q(u) = ||u||_p^{p/theta} / ( dirichlet(u) * ||u||_q^{p(1-theta)/theta} ).
// Evaluated in log space through the q-vs-p mass gap so that q near p does
// not lose the difference of the two norms to cancellation.
double nash_quotient(const ParametricProfile& u, int n, double p, double q);

// Lower-bounds the sharp constant by maximizing the quotient over one
// parametric family with a seeded multi-start simplex search. A nonempty
// box_override narrows (or widens) the searched parameter region, e.g. to a
// near-degenerate family of essentially one candidate; empty means the
// family's default box.
NashScanRow estimate_nash_constant(
    int n, double p, double q, RadialFamily family, std::uint64_t seed,
    const NashBudget& budget = {},
    const std::vector<std::pair<double, double>>& box_override = {});

// ((p-q)/p) * Ent(u^p) + log(int u^q) for unit L^p mass; nonnegative by
// Jensen applied to the probability density u^p.
double jensen_gap(const ParametricProfile& u, int n, double p, double q);

struct LimitTraceRow {
  double q = 0.0;
  double estimate = 0.0; // (p^3/n) (p-q)^{-1} log(||u||_p / ||u||_q)
  double target = 0.0;   // (p/n) Ent(u^p)
  double error = 0.0;    // estimate - target
  bool flagged = false;  // spacing p - q below the 1e-7 precision floor
};

// Difference-quotient trace of the q -> p^- entropy limit for a unit-mass
// profile. First-order in p - q; rows past the precision floor are flagged
// rather than dropped.
std::vector<LimitTraceRow>
entropy_limit_trace(const ParametricProfile& u, int n, double p,
                    const std::vector<double>& q_sequence);

// One estimate_nash_constant row per grid point, merged in q order. Each row
// draws an independent seed (base seed + row index) so rows can run in any
// order, or in parallel, without changing results.
std::vector<NashScanRow> monotonicity_scan(int n, double p,
                                           const std::vector<double>& q_grid,
                                           RadialFamily family,
                                           std::uint64_t seed,
                                           const NashBudget& budget = {});

} // namespace lpentropy
