#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpentropy/radial.hpp"

namespace lpentropy {

// Volume of the unit round S^n (= surface area of the unit ball boundary in
// R^{n+1}).
double sphere_volume(int n);

// Scalar curvature n(n-1) of the unit round S^n.
double scalar_curvature(int n);

// Curvature-driven comparison level (1/(2 n pi e)) * max R = (n-1)/(2 pi e)
// for the second constant at p = 2. Reported alongside searches, never
// asserted as a bound.
double curvature_reference(int n);

// Weight of the zonal volume element: dv = zonal_weight(n, theta) dtheta.
double zonal_weight(int n, double theta);

// Nonnegative function of the geodesic colatitude, sampled on a grid that
// spans [0, pi].
struct ZonalProfile {
  std::vector<double> grid;
  std::vector<double> values;
  ZonalProfile(std::vector<double> grid, std::vector<double> values);
};

ZonalProfile normalized(const ZonalProfile& u, int n, double p);

double sphere_lp_mass(const ZonalProfile& u, int n, double p);
double sphere_dirichlet(const ZonalProfile& u, int n, double p);
// Raw integral of u^p log u^p; callers wanting inequality-side entropy
// normalize first.
double sphere_entropy(const ZonalProfile& u, int n, double p);

FunctionalReport sphere_functionals(const ZonalProfile& u, int n, double p);

// Cutoff, rescaled extremal transplanted to the geodesic ball of radius
// delta around the pole.
struct BubbleSpec {
  int n = 3;
  double p = 2.0;
  double eps = 0.05;
  double delta = 0.5;
  int n_nodes = 4000;
  void validate() const;
};

ZonalProfile make_bubble(const BubbleSpec& spec);

enum class Observable { mass, entropy, energy };

std::string observable_name(Observable obs);
Observable observable_from_name(const std::string& name);

// Least-squares reconstruction of the small-eps expansion of one bubble
// observable against its closed-form prediction. The entropy observable has
// the exactly known -n log(eps) term removed before the regression so the
// remaining model is polynomial in eps^2 and eps^2 log eps.
struct ExpansionFit {
  Observable observable = Observable::mass;
  std::vector<double> eps_grid;
  std::vector<double> fitted;
  std::vector<double> predicted;
  std::vector<double> relative_error; // per coefficient
  double residual_rms = 0.0;
  double condition_number = 0.0;
};

ExpansionFit expansion_fit(int n, double p, const std::vector<double>& eps_grid,
                           Observable observable, double delta = 0.5,
                           int n_nodes = 4000);

// Families of normalized zonal trial functions for the second-constant
// search. Every family contains the constant function (mixtures at weight
// zero), which b_search also evaluates explicitly.
enum class ZonalFamily { constant, cap_mixture, const_bubble };

std::string zonal_family_name(ZonalFamily family);
ZonalFamily zonal_family_from_name(const std::string& name);
std::vector<std::pair<double, double>> zonal_family_box(ZonalFamily family);

// Unnormalized family member 1 + w * shape(theta; params[1]) sampled on the
// given grid. Families: cap_mixture uses a gaussian cap, const_bubble a
// cutoff rescaled extremal.
ZonalProfile zonal_family_member(ZonalFamily family,
                                 const std::vector<double>& params,
                                 const std::vector<double>& grid, int n,
                                 double p);

struct BSearchResult {
  double b_hat = 0.0;
  double constant_candidate = 0.0; // volume^{-p/n}, always entered
  double curvature_comparison = 0.0;
  std::vector<double> argmax_params;
  std::string status; // "ok" or "flagged"
  long long evals = 0;
  std::uint64_t seed = 0;
};

struct BSearchBudget {
  int restarts = 8;
  int max_evals = 400;
  int n_nodes = 2000;
};

// Smallest additive constant making the two-constant entropy inequality with
// gradient coefficient A hold on the family: sup of
// exp((p/n) Ent(u^p)) - A * dirichlet(u) over normalized members.
BSearchResult b_search(int n, double p, double A, ZonalFamily family,
                       std::uint64_t seed, const BSearchBudget& budget = {});

} // namespace lpentropy
