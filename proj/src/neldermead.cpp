#include "lpentropy/neldermead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lpentropy {
namespace {

using Point = std::vector<double>;

void clamp_to(const std::vector<std::pair<double, double>>& box, Point& x) {
  for (std::size_t j = 0; j < box.size(); ++j)
    x[j] = std::clamp(x[j], box[j].first, box[j].second);
}

bool lex_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct Run {
  Point argmax;
  double value = -std::numeric_limits<double>::infinity();
  long long evals = 0;
  bool flagged = false;
};

Run run_simplex(const std::function<double(const Point&)>& f,
                const std::vector<std::pair<double, double>>& box, Rng& rng,
                const SimplexOptions& opts) {
  const std::size_t d = box.size();
  Run out;

  auto eval = [&](Point x) {
    clamp_to(box, x);
    double v = f(x);
    ++out.evals;
    if (!std::isfinite(v)) {
      out.flagged = true;
      v = -std::numeric_limits<double>::infinity();
    }
    if (out.argmax.empty() || v > out.value ||
        (v == out.value && lex_less(x, out.argmax))) {
      out.value = v;
      out.argmax = x;
    }
    return v;
  };

  Point x0(d);
  for (std::size_t j = 0; j < d; ++j)
    x0[j] = rng.uniform(box[j].first, box[j].second);

  // initial simplex: x0 plus one offset vertex per axis
  std::vector<Point> xs(d + 1, x0);
  std::vector<double> vs(d + 1);
  for (std::size_t j = 0; j < d; ++j) {
    const double step = opts.initial_step * (box[j].second - box[j].first);
    double& c = xs[j + 1][j];
    c = (c + step <= box[j].second) ? c + step : c - step;
  }
  for (std::size_t i = 0; i <= d; ++i) vs[i] = eval(xs[i]);

  // classic Nelder-Mead on -f, written for maximization: "worst" = lowest
  while (out.evals < opts.max_evals) {
    std::vector<std::size_t> order(d + 1);
    for (std::size_t i = 0; i <= d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vs[a] > vs[b]; });
    const std::size_t best = order[0], worst = order[d],
                      second_worst = order[d - 1];

    if (vs[best] - vs[worst] < 1e-13 * (1.0 + std::abs(vs[best]))) break;

    Point centroid(d, 0.0);
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < d; ++j) centroid[j] += xs[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(d);

    auto blend = [&](double t) {
      Point x(d);
      for (std::size_t j = 0; j < d; ++j)
        x[j] = centroid[j] + t * (centroid[j] - xs[worst][j]);
      clamp_to(box, x);
      return x;
    };

    const Point xr = blend(1.0);
    const double vr = eval(xr);
    if (vr > vs[best]) {
      const Point xe = blend(2.0);
      const double ve = eval(xe);
      if (ve > vr) {
        xs[worst] = xe;
        vs[worst] = ve;
      } else {
        xs[worst] = xr;
        vs[worst] = vr;
      }
    } else if (vr > vs[second_worst]) {
      xs[worst] = xr;
      vs[worst] = vr;
    } else {
      const Point xc = blend(vr > vs[worst] ? 0.5 : -0.5);
      const double vc = eval(xc);
      if (vc > std::max(vr, vs[worst])) {
        xs[worst] = xc;
        vs[worst] = vc;
      } else {
        for (std::size_t i = 0; i <= d; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < d; ++j)
            xs[i][j] = xs[best][j] + 0.5 * (xs[i][j] - xs[best][j]);
          vs[i] = eval(xs[i]);
          if (out.evals >= opts.max_evals) break;
        }
      }
    }
  }
  return out;
}

} // namespace

SimplexResult maximize_simplex(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<std::pair<double, double>>& box, Rng& rng,
    const SimplexOptions& opts) {
  if (box.empty()) throw std::invalid_argument("maximize_simplex: empty box");
  for (const auto& [lo, hi] : box)
    if (!(lo < hi))
      throw std::invalid_argument("maximize_simplex: degenerate box");
  if (opts.restarts < 1 || opts.max_evals < 1)
    throw std::invalid_argument("maximize_simplex: budget must be positive");

  SimplexResult result;
  result.value = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.restarts; ++r) {
    Run run = run_simplex(f, box, rng, opts);
    result.evals += run.evals;
    result.flagged = result.flagged || run.flagged;
    if (result.argmax.empty()) {
      result.value = run.value;
      result.argmax = run.argmax;
    } else if (run.value > result.value + 1e-12) {
      result.value = run.value;
      result.argmax = run.argmax;
    } else if (run.value > result.value - 1e-12 &&
               lex_less(run.argmax, result.argmax)) {
      result.value = run.value;
      result.argmax = run.argmax;
    }
  }
  return result;
}

} // namespace lpentropy
