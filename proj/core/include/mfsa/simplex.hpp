#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mfsa {

struct SimplexOptions {
  int max_iterations = 5000;
  double tolerance = 1e-12;  // on the simplex value spread
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Derivative-free Nelder-Mead minimisation. Deterministic: the initial
// simplex is the start point plus one fixed step per coordinate, and ties
// during ordering resolve by vertex index.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                          std::span<const double> start,
                          std::span<const double> steps,
                          const SimplexOptions& options = {});

}  // namespace mfsa
