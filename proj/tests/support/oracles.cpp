#include "oracles.hpp"

#include <bit>
#include <cmath>
#include <cstddef>
#include <unordered_set>

#include "mfsa/error.hpp"
#include "mfsa/rng.hpp"
#include "mfsa/stats.hpp"

namespace oracle {

std::vector<std::uint64_t> brute_force_box_counts(
    const std::vector<mfsa::GridPoint>& points, int bits_per_axis) {
  std::vector<std::uint64_t> counts;
  counts.reserve(static_cast<std::size_t>(bits_per_axis));
  for (int m = 1; m <= bits_per_axis; ++m) {
    const int shift = bits_per_axis - m;
    std::unordered_set<std::uint64_t> cells;
    cells.reserve(points.size());
    for (const mfsa::GridPoint& p : points)
      cells.insert((static_cast<std::uint64_t>(p.x >> shift) << 32) |
                   (p.y >> shift));
    counts.push_back(cells.size());
  }
  return counts;
}

PartitionSpectrum partition_spectrum(const std::vector<double>& mass,
                                     const std::vector<double>& z_grid,
                                     int level_lo, int level_hi) {
  mfsa::require(std::has_single_bit(mass.size()), mfsa::Errc::InvalidSpec,
                "mass series length must be a power of two");
  const int max_level = std::countr_zero(mass.size());
  mfsa::require(level_lo >= 0 && level_lo < level_hi && level_hi <= max_level,
                mfsa::Errc::InvalidSpec, "bad dyadic level range");

  PartitionSpectrum out;
  out.z = z_grid;
  out.tau.resize(z_grid.size());

  // log2 of every box mass, per level. Work in logs: masses span hundreds
  // of orders of magnitude at deep levels and z reaches 5.
  std::vector<std::vector<double>> log2_mass(static_cast<std::size_t>(level_hi) + 1);
  {
    std::vector<double> sums = mass;  // level max_level == cell masses
    for (int level = max_level; level >= level_lo; --level) {
      if (level <= level_hi) {
        log2_mass[static_cast<std::size_t>(level)].resize(sums.size());
        for (std::size_t i = 0; i < sums.size(); ++i)
          log2_mass[static_cast<std::size_t>(level)][i] = std::log2(sums[i]);
      }
      if (level == level_lo) break;
      std::vector<double> coarser(sums.size() / 2);
      for (std::size_t i = 0; i < coarser.size(); ++i)
        coarser[i] = sums[2 * i] + sums[2 * i + 1];
      sums = std::move(coarser);
    }
  }

  std::vector<double> xs, ys;
  for (std::size_t zi = 0; zi < z_grid.size(); ++zi) {
    const double z = z_grid[zi];
    xs.clear();
    ys.clear();
    for (int level = level_lo; level <= level_hi; ++level) {
      const std::vector<double>& lm = log2_mass[static_cast<std::size_t>(level)];
      // log2 sum of mass^z, shifted by the max to stay in range
      double peak = lm.front() * z;
      for (double v : lm) peak = std::max(peak, v * z);
      double acc = 0.0;
      for (double v : lm) acc += std::exp2(v * z - peak);
      const double log2_Z = peak + std::log2(acc);
      xs.push_back(static_cast<double>(-level));  // log2 of the box size
      ys.push_back(log2_Z);
    }
    out.tau[zi] = mfsa::fit_line(xs, ys).slope;
  }

  out.alpha.resize(z_grid.size());
  out.f.resize(z_grid.size());
  const std::size_t n = z_grid.size();
  for (std::size_t zi = 0; zi < n; ++zi) {
    const std::size_t lo = zi == 0 ? 0 : zi - 1;
    const std::size_t hi = zi + 1 == n ? n - 1 : zi + 1;
    out.alpha[zi] = (out.tau[hi] - out.tau[lo]) / (z_grid[hi] - z_grid[lo]);
    out.f[zi] = z_grid[zi] * out.alpha[zi] - out.tau[zi];
  }
  return out;
}

mfsa::PointSet2D sierpinski_points(std::size_t n, std::uint64_t seed) {
  static constexpr double cx[3] = {0.0, 1.0, 0.5};
  static constexpr double cy[3] = {0.0, 0.0, 0.8660254037844386};
  mfsa::Rng rng(seed);
  mfsa::PointSet2D points;
  points.x.reserve(n);
  points.y.reserve(n);
  double x = 0.25, y = 0.25;
  for (std::size_t i = 0; i < n + 32; ++i) {
    const auto corner = rng.below(3);
    x = 0.5 * (x + cx[corner]);
    y = 0.5 * (y + cy[corner]);
    if (i >= 32) {  // skip the approach to the attractor
      points.x.push_back(x);
      points.y.push_back(y);
    }
  }
  return points;
}

mfsa::PointSet2D line_points(std::size_t n, std::uint64_t seed) {
  mfsa::Rng rng(seed);
  mfsa::PointSet2D points;
  points.x.reserve(n);
  points.y.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = rng.uniform();
    points.x.push_back(t);
    points.y.push_back(t);
  }
  return points;
}

mfsa::PointSet2D square_points(std::size_t n, std::uint64_t seed) {
  mfsa::Rng rng(seed);
  mfsa::PointSet2D points;
  points.x.reserve(n);
  points.y.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    points.x.push_back(rng.uniform());
    points.y.push_back(rng.uniform());
  }
  return points;
}

std::vector<double> sample_f_distribution(std::size_t n, double theta,
                                          double phi, double q,
                                          std::uint64_t seed) {
  const double a = 1.0 / (q - 1.0);
  mfsa::require(q > 1.0 && phi > -1.0 && a - phi - 1.0 > 0.0,
                mfsa::Errc::InvalidSpec,
                "mixture sampler needs q > 1 and 1/(q-1) > phi + 1");
  mfsa::Rng rng(seed);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = rng.gamma(a - phi - 1.0, 1.0 / a);
    const double u = rng.gamma(phi + 1.0, 1.0 / s);
    v[i] = theta * u;
  }
  return v;
}

}  // namespace oracle
