#include "lpentropy/nash.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "lpentropy/closedform.hpp"
#include "lpentropy/rng.hpp"

using namespace lpentropy;

namespace {

// q = 1 quotient of the unit-mass gaussian a e^{-r^2} in R^3, by hand:
// theta = 3/5, numerator 1, dirichlet 3, ||u||_1 = (2 pi)^{3/4}, exponent
// p(1-theta)/theta = 4/3, so Q = 1 / (3 (2 pi)) = 1/(6 pi).
constexpr double kGaussianQ321 = 1.0 / (6.0 * std::numbers::pi);

} // namespace

TEST_CASE("nash_quotient: gaussian golden value") {
  const ParametricProfile u0 = extremal_profile(3, 2.0);
  CHECK(nash_quotient(u0, 3, 2.0, 1.0) ==
        doctest::Approx(kGaussianQ321).epsilon(1e-10));
}

TEST_CASE("nash_quotient: amplitude and dilation gauge invariance") {
  Rng rng(23);
  for (RadialFamily fam :
       {RadialFamily::stretched_exp, RadialFamily::gaussian_mixture,
        RadialFamily::bump_mixture}) {
    for (int i = 0; i < 5; ++i) {
      const ParametricProfile u = random_profile(fam, rng);
      const double base = nash_quotient(u, 3, 2.0, 1.4);
      ParametricProfile v = u;
      v.amplitude *= 37.0;
      CHECK(nash_quotient(v, 3, 2.0, 1.4) ==
            doctest::Approx(base).epsilon(1e-9));
      ParametricProfile w = u;
      w.dilation = 2.6;
      CHECK(nash_quotient(w, 3, 2.0, 1.4) ==
            doctest::Approx(base).epsilon(1e-9));
    }
  }
}

TEST_CASE("nash_quotient never exceeds the entropy constant") {
  Rng rng(5);
  const double a0 = a0_constant(3, 2.0);
  for (double q : {1.0, 1.5, 1.9, 1.99}) {
    for (int i = 0; i < 12; ++i) {
      const ParametricProfile u =
          random_profile(RadialFamily::gaussian_mixture, rng);
      CHECK(nash_quotient(u, 3, 2.0, q) <= a0 + 1e-6);
    }
  }
}

TEST_CASE("estimate_nash_constant: bound, determinism, frozen optimum") {
  const double a0 = a0_constant(3, 2.0);
  const NashScanRow row = estimate_nash_constant(
      3, 2.0, 1.9, RadialFamily::stretched_exp, 11);
  CHECK(row.optimizer_status == "ok");
  CHECK(row.n_hat > 0.9 * a0);
  CHECK(row.n_hat <= a0 + 1e-6);
  CHECK(row.theta == doctest::Approx(theta(3, 2.0, 1.9)));
  CHECK(row.evals > 0);

  const NashScanRow again = estimate_nash_constant(
      3, 2.0, 1.9, RadialFamily::stretched_exp, 11);
  CHECK(again.n_hat == row.n_hat);
  REQUIRE(again.argmax_params.size() == row.argmax_params.size());
  for (std::size_t j = 0; j < row.argmax_params.size(); ++j)
    CHECK(again.argmax_params[j] == row.argmax_params[j]);

  // frozen family optimum at q = 1.5 (quadrature oracle, sup over s)
  const NashScanRow mid = estimate_nash_constant(
      3, 2.0, 1.5, RadialFamily::stretched_exp, 11);
  CHECK(mid.n_hat / a0 == doctest::Approx(0.8714022957).epsilon(1e-6));
}

TEST_CASE("estimate_nash_constant: degenerate and nested parameter boxes") {
  // box collapsed around s = 3: the estimate is that single candidate's
  // quotient
  ParametricProfile u;
  u.family = RadialFamily::stretched_exp;
  u.params = {3.0};
  const double q_single = nash_quotient(u, 3, 2.0, 1.5);
  const NashScanRow tiny = estimate_nash_constant(
      3, 2.0, 1.5, RadialFamily::stretched_exp, 7, {},
      {{3.0 - 1e-9, 3.0 + 1e-9}});
  CHECK(tiny.n_hat == doctest::Approx(q_single).epsilon(1e-9));

  // widening the box never loses value: [2.9, 3.1] excludes the family
  // optimum near s = 2.39, the full box contains it
  const NashScanRow narrow = estimate_nash_constant(
      3, 2.0, 1.5, RadialFamily::stretched_exp, 7, {}, {{2.9, 3.1}});
  const NashScanRow wide = estimate_nash_constant(
      3, 2.0, 1.5, RadialFamily::stretched_exp, 7);
  CHECK(wide.n_hat >= narrow.n_hat - 1e-9);
}

TEST_CASE("jensen_gap: golden value, nonnegativity, preconditions") {
  const ParametricProfile u0 = extremal_profile(3, 2.0);
  CHECK(jensen_gap(u0, 3, 2.0, 1.5) ==
        doctest::Approx(0.0565231086777).epsilon(1e-9));

  // gap collapses quadratically as q -> p
  const double near = jensen_gap(u0, 3, 2.0, 2.0 - 1e-4);
  CHECK(near >= -1e-10);
  CHECK(near < 1e-6);

  Rng rng(41);
  for (RadialFamily fam :
       {RadialFamily::stretched_exp, RadialFamily::gaussian_mixture,
        RadialFamily::bump_mixture}) {
    for (double q : {1.0, 1.7}) {
      for (int i = 0; i < 5; ++i) {
        const ParametricProfile u = normalized(random_profile(fam, rng), 3, 2.0);
        CHECK(jensen_gap(u, 3, 2.0, q) >= -1e-8);
      }
    }
  }

  ParametricProfile off = u0;
  off.amplitude *= 2.0;
  CHECK_THROWS_AS(jensen_gap(off, 3, 2.0, 1.5), std::invalid_argument);
}

TEST_CASE("entropy_limit_trace: gaussian first-order convergence ladder") {
  const ParametricProfile u0 = extremal_profile(3, 2.0);
  std::vector<double> qs;
  for (int k = 1; k <= 8; ++k) qs.push_back(2.0 - std::pow(10.0, -k));
  const auto rows = entropy_limit_trace(u0, 3, 2.0, qs);
  REQUIRE(rows.size() == 8);

  const double target = -1.4515827052894548647; // (2/3) Ent(gaussian^2)
  for (const auto& r : rows) CHECK(r.target == doctest::Approx(target).epsilon(1e-10));

  // frozen difference-quotient errors (quadrature oracle); the estimate
  // approaches the target from below
  const double frozen[8] = {-0.103626,   -0.00981536, -0.000976363,
                            -9.75848e-5, -9.75797e-6, -9.75792e-7,
                            -9.75791e-8, -9.75791e-9};
  for (int k = 0; k < 8; ++k)
    CHECK(rows[k].error == doctest::Approx(frozen[k]).epsilon(1e-4));

  // monotone decay, ratio ~ 10 while well above the precision floor
  for (int k = 0; k + 1 < 8; ++k) {
    CHECK(std::abs(rows[k + 1].error) < std::abs(rows[k].error));
    if (k < 6)
      CHECK(rows[k].error / rows[k + 1].error ==
            doctest::Approx(10.0).epsilon(0.07));
  }

  // only the sub-floor spacing is flagged
  for (int k = 0; k < 7; ++k) CHECK_FALSE(rows[k].flagged);
  CHECK(rows[7].flagged);
}

TEST_CASE("entropy_limit_trace: precondition failures") {
  const ParametricProfile u0 = extremal_profile(3, 2.0);
  ParametricProfile off = u0;
  off.amplitude *= 2.0;
  CHECK_THROWS_AS(entropy_limit_trace(off, 3, 2.0, {1.5, 1.9}),
                  std::invalid_argument);
  CHECK_THROWS_AS(entropy_limit_trace(u0, 3, 2.0, {1.9, 1.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(entropy_limit_trace(u0, 3, 2.0, {1.5, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(entropy_limit_trace(u0, 3, 2.0, {}), std::invalid_argument);
}

TEST_CASE("monotonicity_scan: nondecreasing toward the entropy constant") {
  const double a0 = a0_constant(3, 2.0);
  const auto rows = monotonicity_scan(3, 2.0, {1.0, 1.5, 1.8, 1.95, 1.99},
                                      RadialFamily::stretched_exp, 101);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    CHECK(rows[i].q < rows[i + 1].q);
    CHECK(rows[i + 1].n_hat >= rows[i].n_hat * (1.0 - 1e-4));
  }
  for (const auto& r : rows) {
    CHECK(r.n_hat > 0.0);
    CHECK(r.n_hat <= a0 + 1e-6);
    CHECK(r.optimizer_status == "ok");
  }
  CHECK(rows.back().n_hat >= 0.95 * a0);

  // frozen per-q family suprema (quadrature + fine s sweep oracle)
  const double frozen[5] = {0.730304145, 0.8714022957, 0.9495183943,
                            0.9874724768, 0.9974989253};
  for (int i = 0; i < 5; ++i)
    CHECK(rows[i].n_hat / a0 == doctest::Approx(frozen[i]).epsilon(1e-6));

  // per-row seeds: a single-q scan reproduces the matching full-scan row
  const auto single = monotonicity_scan(3, 2.0, {1.8},
                                        RadialFamily::stretched_exp, 103);
  REQUIRE(single.size() == 1);
  CHECK(single[0].n_hat == rows[2].n_hat);

  CHECK_THROWS_AS(monotonicity_scan(3, 2.0, {1.5, 1.2},
                                    RadialFamily::stretched_exp, 1),
                  std::invalid_argument);
}
