#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mfsa/series.hpp"

namespace mfsa {

// The lag portrait of a series: one point (r_t, r_{t+lag}) per admissible t.
struct PointSet2D {
  std::vector<double> x;
  std::vector<double> y;
  int lag = 1;
};

// Occupation of the four quadrants (anticlockwise: Q1 = +/+, Q2 = -/+,
// Q3 = -/-, Q4 = +/-). Points with a zero coordinate sit on an axis and are
// excluded from the fractions; their count is reported separately.
struct QuadrantStats {
  double p1 = 0.0, p2 = 0.0, p3 = 0.0, p4 = 0.0;
  std::size_t n_axis = 0;
  // Sign balance and sum of the full underlying series, not of the lag
  // pairs: the diagnostics that tell a dominant drift from a symmetric one.
  long long n_pos_minus_neg = 0;
  double sum_returns = 0.0;
};

struct GridPoint {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
};

// Occupied-box counts per resolution, 1..bits bits per axis, plus the
// dimension fitted on log2(n_boxes) against the resolution.
struct BoxCountCurve {
  std::vector<int> m;  // bits per axis
  std::vector<std::uint64_t> n_boxes;
  std::size_t n_points = 0;
  double d_f = 0.0;
  double stderr_d = 0.0;
  double r2 = 0.0;
  std::pair<int, int> fit_range{2, 8};
  bool saturated = false;  // fit resolutions dropped for hitting the point count
};

PointSet2D build_ldiagram(const RealSeries& series, int lag);

QuadrantStats quadrant_stats(const PointSet2D& points, const RealSeries& original);

// Min-max scales each axis onto the integer lattice [0, 2^bits - 1].
std::vector<GridPoint> quantize_points(const PointSet2D& points, int bits_per_axis);

// Counts occupied boxes at every resolution in one sorted sweep: interleave
// the coordinate bits, sort the codes, and histogram the coarsest level at
// which adjacent codes differ. Exact, O(n log n), independent of point order.
BoxCountCurve box_count(std::span<const GridPoint> points, int bits_per_axis);

// Fits d_f over the given resolution range, excluding resolutions whose box
// count is within 90% of the point count (the curve flattens there because
// boxes run out of points, not structure).
BoxCountCurve fractal_dimension(BoxCountCurve curve, std::pair<int, int> fit_range);

}  // namespace mfsa
