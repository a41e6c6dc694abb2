#include "mfsa/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mfsa/error.hpp"

namespace mfsa {

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                          std::span<const double> start,
                          std::span<const double> steps,
                          const SimplexOptions& options) {
  const std::size_t dim = start.size();
  require(dim >= 1, Errc::InvalidSpec, "empty start point");
  require(steps.size() == dim, Errc::LengthMismatch, "steps/start size");

  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  std::vector<std::vector<double>> vertex(dim + 1, std::vector<double>(start.begin(), start.end()));
  for (std::size_t i = 0; i < dim; ++i) vertex[i + 1][i] += steps[i];

  std::vector<double> value(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) value[i] = objective(vertex[i]);

  std::vector<std::size_t> order(dim + 1);
  std::iota(order.begin(), order.end(), 0);
  const auto sort_vertices = [&] {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
  };

  std::vector<double> centroid(dim), trial(dim), trial2(dim);
  SimplexResult result;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    sort_vertices();
    const std::size_t best = order[0];
    const std::size_t worst = order[dim];
    const std::size_t second_worst = order[dim - 1];

    if (std::fabs(value[worst] - value[best]) <=
        options.tolerance * (std::fabs(value[best]) + options.tolerance)) {
      result.converged = true;
      result.iterations = iter;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += vertex[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    for (std::size_t d = 0; d < dim; ++d)
      trial[d] = centroid[d] + kReflect * (centroid[d] - vertex[worst][d]);
    const double reflected = objective(trial);

    if (reflected < value[order[0]]) {
      for (std::size_t d = 0; d < dim; ++d)
        trial2[d] = centroid[d] + kExpand * (trial[d] - centroid[d]);
      const double expanded = objective(trial2);
      if (expanded < reflected) {
        vertex[worst] = trial2;
        value[worst] = expanded;
      } else {
        vertex[worst] = trial;
        value[worst] = reflected;
      }
    } else if (reflected < value[second_worst]) {
      vertex[worst] = trial;
      value[worst] = reflected;
    } else {
      const bool outside = reflected < value[worst];
      const auto& anchor = outside ? trial : vertex[worst];
      for (std::size_t d = 0; d < dim; ++d)
        trial2[d] = centroid[d] + kContract * (anchor[d] - centroid[d]);
      const double contracted = objective(trial2);
      if (contracted < std::min(reflected, value[worst])) {
        vertex[worst] = trial2;
        value[worst] = contracted;
      } else {
        // shrink everything towards the best vertex
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == order[0]) continue;
          for (std::size_t d = 0; d < dim; ++d)
            vertex[i][d] = vertex[order[0]][d] + kShrink * (vertex[i][d] - vertex[order[0]][d]);
          value[i] = objective(vertex[i]);
        }
      }
    }
    result.iterations = iter + 1;
  }

  sort_vertices();
  result.x = vertex[order[0]];
  result.value = value[order[0]];
  return result;
}

}  // namespace mfsa
