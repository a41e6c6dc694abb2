#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mfsa/series.hpp"

namespace mfsa {

// How segments cover the profile: OnePass tiles floor(N/s) windows from the
// front; TwoPass adds the same tiling from the back, so the tail of a series
// whose length is not a multiple of s is not discarded.
enum class Segmentation { OnePass, TwoPass };

struct MfdfaConfig {
  int poly_order = 5;      // detrending polynomial degree
  int profile_order = 2;   // 1 = single cumulative sum, 2 = double
  std::vector<int> s_grid;        // window sizes, strictly increasing
  std::vector<double> z_grid;     // moment orders, strictly increasing,
                                  // must contain 0 and 2
  std::pair<int, int> fit_range{0, 0};  // inclusive window-size bounds used
                                        // for the scaling regression
  Segmentation segmentation = Segmentation::OnePass;

  // Grids for a series of the given length: 30 window sizes geometric from
  // 8 to min(N/4, 11585), z from -3 to 5 in steps of 1/4. The regression
  // uses the windows with at least 8 samples per detrending coefficient and
  // at least 32 segments; the smallest windows are detrending-starved and
  // the largest are segment-starved, and both bend log F(s) off the power
  // law.
  static MfdfaConfig defaults(std::size_t series_length);

  void validate(std::size_t series_length) const;
};

// F_z(s) for every (s, z) pair, plus bookkeeping from the segment sweep.
struct FluctuationTable {
  std::vector<int> s;
  std::vector<double> z;
  std::vector<double> fluct;    // row-major [si * z.size() + zi], > 0
  std::vector<int> n_segments;  // per window size
  int floored_segments = 0;     // segments whose residual was exactly zero
                                // and was clipped to the positive floor

  double at(std::size_t si, std::size_t zi) const {
    return fluct[si * z.size() + zi];
  }
};

// Scaling exponents h(z) from the log-log regression, and tau(z) = z*h - 1.
struct ScalingResult {
  std::vector<double> z;
  std::vector<double> h;
  std::vector<double> tau;
  std::vector<double> stderr_h;  // regression standard error of each slope
  std::vector<double> r2;
};

// Legendre transform of tau(z): singularity strengths and their dimensions.
struct MultifractalSpectrum {
  std::vector<double> alpha;
  std::vector<double> f;
  double delta_h = 0.0;      // h(z_min) - h(z_max)
  double delta_alpha = 0.0;  // max alpha - min alpha
  double hurst = 0.0;        // h at z = 2
  double support_dim = 0.0;  // f at z = 0
  bool alpha_monotonic = true;  // false when alpha(z) fails to decrease;
                                // a noise flag, not an error
};

// Split of the scaling spectrum into its correlation-driven and
// distribution-driven parts, using shuffled and shuffled+phase-randomized
// references on the same z grid.
struct Decomposition {
  std::vector<double> z;
  std::vector<double> h_cor;  // h - h_shuffled
  std::vector<double> h_pdf;  // h_shuffled
  double weight_pdf = 0.0;    // delta_h_shuffled / delta_h, clipped to [0,1]
  double weight_cor = 0.0;    // 1 - weight_pdf
  // max_z |h(z) - 1/2| of the shuffled+randomized reference; near zero when
  // the destroyed series is truly featureless.
  double reference_flatness = 0.0;
};

// Cumulative sum of mean-centred values, applied `order` times.
RealSeries build_profile(const RealSeries& series, int order);

// Sweeps every window size: tile the profile, detrend each segment with a
// least-squares polynomial, and aggregate squared residuals into F_z(s).
// `threads` parallelises over window sizes without changing any result.
FluctuationTable fluctuation_table(const RealSeries& profile,
                                   const MfdfaConfig& cfg, int threads = 1);

ScalingResult scaling_exponents(const FluctuationTable& table,
                                const MfdfaConfig& cfg);

MultifractalSpectrum legendre_spectrum(const ScalingResult& result);

Decomposition decompose(const ScalingResult& original,
                        const ScalingResult& shuffled,
                        const ScalingResult& shuffled_randomized);

// One-call pipeline: profile -> fluctuation table -> scaling exponents.
ScalingResult mfdfa(const RealSeries& series, const MfdfaConfig& cfg,
                    int threads = 1);

}  // namespace mfsa
