#include "mfsa/ldiagram.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "mfsa/error.hpp"
#include "mfsa/stats.hpp"

namespace mfsa {
namespace {

// Spreads the low 32 bits of v to the even bit positions of a 64-bit word.
std::uint64_t spread_bits(std::uint32_t v) {
  std::uint64_t x = v;
  x = (x | (x << 16)) & 0x0000ffff0000ffffull;
  x = (x | (x << 8)) & 0x00ff00ff00ff00ffull;
  x = (x | (x << 4)) & 0x0f0f0f0f0f0f0f0full;
  x = (x | (x << 2)) & 0x3333333333333333ull;
  x = (x | (x << 1)) & 0x5555555555555555ull;
  return x;
}

// x-major interleave: bit i of x lands at position 2i+1, bit i of y at 2i.
std::uint64_t interleave(GridPoint p) {
  return (spread_bits(p.x) << 1) | spread_bits(p.y);
}

}  // namespace

PointSet2D build_ldiagram(const RealSeries& series, int lag) {
  require(!series.values.empty(), Errc::EmptyInput, "empty series");
  require(lag >= 1, Errc::InvalidSpec, "lag must be >= 1");
  require(static_cast<std::size_t>(lag) < series.values.size(), Errc::LagTooLarge,
          "lag " + std::to_string(lag) + " leaves no pairs");

  PointSet2D points;
  points.lag = lag;
  const std::size_t n = series.values.size() - static_cast<std::size_t>(lag);
  points.x.reserve(n);
  points.y.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    points.x.push_back(series.values[t]);
    points.y.push_back(series.values[t + lag]);
  }
  return points;
}

QuadrantStats quadrant_stats(const PointSet2D& points, const RealSeries& original) {
  require(points.x.size() == points.y.size(), Errc::LengthMismatch,
          "x/y size");
  require(!points.x.empty(), Errc::EmptyInput, "empty point set");

  QuadrantStats stats;
  std::size_t q1 = 0, q2 = 0, q3 = 0, q4 = 0;
  for (std::size_t i = 0; i < points.x.size(); ++i) {
    const double x = points.x[i];
    const double y = points.y[i];
    if (x == 0.0 || y == 0.0) {
      ++stats.n_axis;
    } else if (x > 0.0) {
      y > 0.0 ? ++q1 : ++q4;
    } else {
      y > 0.0 ? ++q2 : ++q3;
    }
  }
  const std::size_t classified = q1 + q2 + q3 + q4;
  require(classified > 0, Errc::DegenerateRange, "every point sits on an axis");
  const double denom = static_cast<double>(classified);
  stats.p1 = q1 / denom;
  stats.p2 = q2 / denom;
  stats.p3 = q3 / denom;
  stats.p4 = q4 / denom;

  for (double r : original.values) {
    if (r > 0.0)
      ++stats.n_pos_minus_neg;
    else if (r < 0.0)
      --stats.n_pos_minus_neg;
    stats.sum_returns += r;
  }
  return stats;
}

std::vector<GridPoint> quantize_points(const PointSet2D& points, int bits_per_axis) {
  require(bits_per_axis >= 1 && bits_per_axis <= 31, Errc::InvalidConfig,
          "bits per axis must lie in [1, 31]");
  require(points.x.size() == points.y.size(), Errc::LengthMismatch, "x/y size");
  require(!points.x.empty(), Errc::EmptyInput, "empty point set");

  const auto [xmin_it, xmax_it] = std::minmax_element(points.x.begin(), points.x.end());
  const auto [ymin_it, ymax_it] = std::minmax_element(points.y.begin(), points.y.end());
  const double xmin = *xmin_it, xmax = *xmax_it;
  const double ymin = *ymin_it, ymax = *ymax_it;
  require(xmax > xmin && ymax > ymin, Errc::DegenerateRange,
          "points are collinear with an axis; nothing to resolve");

  const double cells = static_cast<double>(std::uint64_t{1} << bits_per_axis);
  const std::uint32_t top = static_cast<std::uint32_t>((std::uint64_t{1} << bits_per_axis) - 1);
  const double sx = cells / (xmax - xmin);
  const double sy = cells / (ymax - ymin);

  std::vector<GridPoint> grid(points.x.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // the maxima land exactly on `cells`; clamp them into the last cell
    const auto gx = static_cast<std::uint32_t>(
        std::min(std::floor((points.x[i] - xmin) * sx), cells - 1.0));
    const auto gy = static_cast<std::uint32_t>(
        std::min(std::floor((points.y[i] - ymin) * sy), cells - 1.0));
    grid[i] = {std::min(gx, top), std::min(gy, top)};
  }
  return grid;
}

BoxCountCurve box_count(std::span<const GridPoint> points, int bits_per_axis) {
  require(bits_per_axis >= 1 && bits_per_axis <= 31, Errc::InvalidConfig,
          "bits per axis must lie in [1, 31]");
  require(!points.empty(), Errc::EmptyInput, "empty point set");

  const std::uint32_t limit =
      static_cast<std::uint32_t>((std::uint64_t{1} << bits_per_axis) - 1);
  std::vector<std::uint64_t> codes(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(points[i].x <= limit && points[i].y <= limit, Errc::OutOfRange,
            "grid point exceeds the stated resolution");
    codes[i] = interleave(points[i]);
  }
  std::sort(codes.begin(), codes.end());

  // After sorting, a box at resolution m is a maximal run of codes sharing
  // their top 2m bits. Count the runs for all m at once: each adjacent pair
  // of distinct codes starts a new run at every m from the coarsest level
  // where they differ downwards, so a histogram plus a running sum suffices.
  const int k = bits_per_axis;
  std::vector<std::uint64_t> new_runs(static_cast<std::size_t>(k) + 1, 0);
  for (std::size_t i = 1; i < codes.size(); ++i) {
    const std::uint64_t diff = codes[i] ^ codes[i - 1];
    if (diff == 0) continue;
    const int highest = 63 - std::countl_zero(diff);
    new_runs[static_cast<std::size_t>(k - highest / 2)] += 1;
  }

  BoxCountCurve curve;
  curve.n_points = points.size();
  curve.m.resize(static_cast<std::size_t>(k));
  curve.n_boxes.resize(static_cast<std::size_t>(k));
  std::uint64_t occupied = 1;
  for (int m = 1; m <= k; ++m) {
    occupied += new_runs[static_cast<std::size_t>(m)];
    curve.m[static_cast<std::size_t>(m - 1)] = m;
    curve.n_boxes[static_cast<std::size_t>(m - 1)] = occupied;
  }
  return curve;
}

BoxCountCurve fractal_dimension(BoxCountCurve curve, std::pair<int, int> fit_range) {
  require(fit_range.first >= 1 && fit_range.first <= fit_range.second,
          Errc::InvalidConfig, "bad resolution fit range");
  require(!curve.m.empty(), Errc::EmptyInput, "empty box-count curve");

  const auto threshold =
      static_cast<std::uint64_t>(0.9 * static_cast<double>(curve.n_points));
  std::vector<double> xs, ys;
  bool saturated = false;
  for (std::size_t i = 0; i < curve.m.size(); ++i) {
    if (curve.m[i] < fit_range.first || curve.m[i] > fit_range.second) continue;
    if (curve.n_boxes[i] >= threshold) {
      saturated = true;
      continue;
    }
    xs.push_back(static_cast<double>(curve.m[i]));
    ys.push_back(std::log2(static_cast<double>(curve.n_boxes[i])));
  }
  require(xs.size() >= 3, Errc::InsufficientScales,
          "fewer than 3 usable resolutions in the fit range");

  const LineFit fit = fit_line(xs, ys);
  curve.d_f = fit.slope;
  curve.stderr_d = fit.stderr_slope;
  curve.r2 = fit.r2;
  curve.fit_range = fit_range;
  curve.saturated = saturated;
  return curve;
}

}  // namespace mfsa
