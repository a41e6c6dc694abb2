#include "mfsa/mfdfa.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "mfsa/detrend.hpp"
#include "mfsa/error.hpp"
#include "mfsa/parallel.hpp"
#include "mfsa/stats.hpp"
#include "mfsa/suite.hpp"

namespace mfsa {
namespace {

// Segments with an exactly-zero residual (constant or perfectly polynomial
// windows) would put a -inf into the log aggregation; they are clipped to
// this floor and counted so callers can warn.
constexpr double kResidualFloor = 1e-30;

bool close(double a, double b) { return std::fabs(a - b) < 1e-9; }

}  // namespace

MfdfaConfig MfdfaConfig::defaults(std::size_t series_length) {
  require(series_length >= 32, Errc::TooShort,
          "series too short for the default window grid");
  return MfdfaGridSpec{}.resolve(series_length);
}

void MfdfaConfig::validate(std::size_t series_length) const {
  require(poly_order >= 0, Errc::InvalidConfig, "negative poly_order");
  require(profile_order == 1 || profile_order == 2, Errc::InvalidConfig,
          "profile_order must be 1 or 2");
  require(!s_grid.empty(), Errc::InvalidConfig, "empty window grid");
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    require(s_grid[i] >= poly_order + 2, Errc::InvalidConfig,
            "window " + std::to_string(s_grid[i]) +
                " leaves no residual freedom after a degree-" +
                std::to_string(poly_order) + " fit");
    if (i > 0)
      require(s_grid[i] > s_grid[i - 1], Errc::InvalidConfig,
              "window grid not strictly increasing");
  }
  require(static_cast<std::size_t>(s_grid.back()) * 2 <= series_length,
          Errc::WindowTooLarge,
          "largest window " + std::to_string(s_grid.back()) +
              " exceeds half the series length");

  require(z_grid.size() >= 3, Errc::InvalidConfig, "need at least 3 moment orders");
  bool has_zero = false, has_two = false;
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    if (i > 0)
      require(z_grid[i] > z_grid[i - 1], Errc::InvalidConfig,
              "moment grid not strictly increasing");
    has_zero = has_zero || close(z_grid[i], 0.0);
    has_two = has_two || close(z_grid[i], 2.0);
  }
  require(has_zero && has_two, Errc::InvalidConfig,
          "moment grid must contain 0 (support) and 2 (Hurst)");

  require(fit_range.first <= fit_range.second, Errc::InvalidConfig,
          "fit range inverted");
  require(fit_range.first >= s_grid.front() && fit_range.second <= s_grid.back(),
          Errc::InvalidConfig, "fit range outside the window grid");
}

RealSeries build_profile(const RealSeries& series, int order) {
  require(!series.values.empty(), Errc::EmptyInput, "empty series");
  require(order == 1 || order == 2, Errc::InvalidConfig,
          "profile order must be 1 or 2");

  RealSeries out;
  out.label = series.label;
  out.values = series.values;
  for (int pass = 0; pass < order; ++pass) {
    const double m = mean(out.values);
    double acc = 0.0;
    for (double& v : out.values) {
      acc += v - m;
      v = acc;
    }
  }
  return out;
}

FluctuationTable fluctuation_table(const RealSeries& profile,
                                   const MfdfaConfig& cfg, int threads) {
  const std::size_t n = profile.values.size();
  cfg.validate(n);

  FluctuationTable table;
  table.s = cfg.s_grid;
  table.z = cfg.z_grid;
  table.n_segments.assign(cfg.s_grid.size(), 0);
  table.fluct.assign(cfg.s_grid.size() * cfg.z_grid.size(), 0.0);

  const std::size_t nz = cfg.z_grid.size();
  std::atomic<int> floored{0};

  parallel_for(cfg.s_grid.size(), threads, [&](std::size_t si) {
    const int s = cfg.s_grid[si];
    const std::size_t slen = static_cast<std::size_t>(s);
    const std::size_t forward = n / slen;
    const std::size_t total =
        cfg.segmentation == Segmentation::TwoPass ? 2 * forward : forward;

    const DetrendBasis basis(slen, cfg.poly_order);
    std::vector<double> scratch(slen);
    std::vector<double> log_resid(total);

    int local_floored = 0;
    const double* y = profile.values.data();
    for (std::size_t seg = 0; seg < total; ++seg) {
      const std::size_t start =
          seg < forward ? seg * slen : n - (seg - forward + 1) * slen;
      double ms = basis.mean_square_residual({y + start, slen}, scratch);
      if (ms <= 0.0) {
        ms = kResidualFloor;
        ++local_floored;
      }
      log_resid[seg] = std::log(ms);
    }
    floored.fetch_add(local_floored, std::memory_order_relaxed);
    table.n_segments[si] = static_cast<int>(total);

    // Aggregate in the log domain: the z/2-th moment of the squared
    // residuals via a max-shifted mean, which survives z as negative as the
    // floor allows without overflow.
    for (std::size_t zi = 0; zi < nz; ++zi) {
      const double z = cfg.z_grid[zi];
      double f;
      if (close(z, 0.0)) {
        double acc = 0.0;
        for (double lr : log_resid) acc += lr;
        f = std::exp(0.5 * acc / static_cast<double>(total));
      } else {
        double peak = -std::numeric_limits<double>::infinity();
        for (double lr : log_resid) peak = std::max(peak, 0.5 * z * lr);
        double acc = 0.0;
        for (double lr : log_resid) acc += std::exp(0.5 * z * lr - peak);
        const double log_mean =
            peak + std::log(acc / static_cast<double>(total));
        f = std::exp(log_mean / z);
      }
      table.fluct[si * nz + zi] = f;
    }
  });

  table.floored_segments = floored.load();
  return table;
}

ScalingResult scaling_exponents(const FluctuationTable& table,
                                const MfdfaConfig& cfg) {
  std::vector<double> log_s;
  std::vector<std::size_t> rows;
  for (std::size_t si = 0; si < table.s.size(); ++si) {
    if (table.s[si] < cfg.fit_range.first || table.s[si] > cfg.fit_range.second)
      continue;
    rows.push_back(si);
    log_s.push_back(std::log2(static_cast<double>(table.s[si])));
  }
  require(rows.size() >= 4, Errc::InsufficientScales,
          "fit range covers " + std::to_string(rows.size()) +
              " window sizes; need at least 4");

  // Integrating the series k times raises every fluctuation exponent by
  // k - 1 relative to the order-1 profile; divide that growth out so h(z)
  // is always on the same scale.
  const double order_shift = static_cast<double>(cfg.profile_order - 1);

  ScalingResult res;
  res.z = table.z;
  const std::size_t nz = table.z.size();
  res.h.resize(nz);
  res.tau.resize(nz);
  res.stderr_h.resize(nz);
  res.r2.resize(nz);

  std::vector<double> log_f(rows.size());
  for (std::size_t zi = 0; zi < nz; ++zi) {
    for (std::size_t k = 0; k < rows.size(); ++k)
      log_f[k] = std::log2(table.at(rows[k], zi)) - order_shift * log_s[k];
    const LineFit fit = fit_line(log_s, log_f);
    res.h[zi] = fit.slope;
    res.tau[zi] = table.z[zi] * fit.slope - 1.0;
    res.stderr_h[zi] = fit.stderr_slope;
    res.r2[zi] = fit.r2;
  }
  return res;
}

MultifractalSpectrum legendre_spectrum(const ScalingResult& result) {
  const std::size_t n = result.z.size();
  require(n >= 3, Errc::InsufficientScales,
          "need at least 3 moment orders for the Legendre transform");
  require(result.h.size() == n, Errc::LengthMismatch, "z/h size");

  const auto& z = result.z;
  const auto& h = result.h;

  MultifractalSpectrum spec;
  spec.alpha.resize(n);
  spec.f.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    double dh;
    if (i == 0)
      dh = (h[1] - h[0]) / (z[1] - z[0]);
    else if (i == n - 1)
      dh = (h[n - 1] - h[n - 2]) / (z[n - 1] - z[n - 2]);
    else
      dh = (h[i + 1] - h[i - 1]) / (z[i + 1] - z[i - 1]);
    spec.alpha[i] = h[i] + z[i] * dh;
    spec.f[i] = z[i] * (spec.alpha[i] - h[i]) + 1.0;
  }

  spec.delta_h = h.front() - h.back();
  const auto [amin, amax] = std::minmax_element(spec.alpha.begin(), spec.alpha.end());
  spec.delta_alpha = *amax - *amin;

  std::size_t i_zero = n, i_two = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (close(z[i], 0.0)) i_zero = i;
    if (close(z[i], 2.0)) i_two = i;
  }
  require(i_zero < n && i_two < n, Errc::GridMismatch,
          "moment grid lacks 0 or 2");
  spec.hurst = h[i_two];
  spec.support_dim = spec.f[i_zero];

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (spec.alpha[i + 1] > spec.alpha[i] + 1e-12) {
      spec.alpha_monotonic = false;
      break;
    }
  }
  return spec;
}

Decomposition decompose(const ScalingResult& original,
                        const ScalingResult& shuffled,
                        const ScalingResult& shuffled_randomized) {
  const std::size_t n = original.z.size();
  require(shuffled.z.size() == n && shuffled_randomized.z.size() == n,
          Errc::GridMismatch, "moment grids differ in length");
  for (std::size_t i = 0; i < n; ++i) {
    require(std::fabs(original.z[i] - shuffled.z[i]) < 1e-12 &&
                std::fabs(original.z[i] - shuffled_randomized.z[i]) < 1e-12,
            Errc::GridMismatch, "moment grids differ in values");
  }

  Decomposition dec;
  dec.z = original.z;
  dec.h_cor.resize(n);
  dec.h_pdf.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    dec.h_cor[i] = original.h[i] - shuffled.h[i];
    dec.h_pdf[i] = shuffled.h[i];
  }

  const double delta_h = original.h.front() - original.h.back();
  const double delta_h_shuffled = shuffled.h.front() - shuffled.h.back();
  require(std::fabs(delta_h) > 1e-12, Errc::ZeroDeltaH,
          "flat spectrum: contribution weights are undefined");
  dec.weight_pdf = std::clamp(delta_h_shuffled / delta_h, 0.0, 1.0);
  dec.weight_cor = 1.0 - dec.weight_pdf;

  double flat = 0.0;
  for (double hv : shuffled_randomized.h)
    flat = std::max(flat, std::fabs(hv - 0.5));
  dec.reference_flatness = flat;
  return dec;
}

ScalingResult mfdfa(const RealSeries& series, const MfdfaConfig& cfg,
                    int threads) {
  const RealSeries profile = build_profile(series, cfg.profile_order);
  const FluctuationTable table = fluctuation_table(profile, cfg, threads);
  return scaling_exponents(table, cfg);
}

}  // namespace mfsa
