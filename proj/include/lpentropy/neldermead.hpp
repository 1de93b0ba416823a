#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "lpentropy/rng.hpp"

namespace lpentropy {

struct SimplexOptions {
  int restarts = 8;
  int max_evals = 400;        // per restart
  double initial_step = 0.05; // fraction of box width
};

struct SimplexResult {
  std::vector<double> argmax;
  double value = 0.0;
  long long evals = 0; // total objective evaluations across restarts
  bool flagged = false; // objective returned a non-finite value at least once
};

// Maximizes f over an axis-aligned box with Nelder-Mead multi-start.
// Candidate points are projected onto the box before evaluation, so f is
// only ever called on feasible parameters. Non-finite objective values are
// treated as -inf and flagged. Restart winners tie-break (within 1e-12 in
// value) toward the lexicographically smallest parameter vector, which keeps
// the result deterministic for a given rng state.
SimplexResult maximize_simplex(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<std::pair<double, double>>& box, Rng& rng,
    const SimplexOptions& opts = {});

} // namespace lpentropy
