#include "mfsa/suite.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "mfsa/error.hpp"
#include "mfsa/parallel.hpp"
#include "mfsa/rng.hpp"
#include "mfsa/surrogate.hpp"

namespace mfsa {
namespace {

constexpr int kMaxDefaultWindow = 11585;

// One seed slot per (input, variant) pair; the original consumes none but
// keeps the numbering aligned and stable.
std::uint64_t variant_seed(std::uint64_t base, std::size_t input,
                           Variant variant) {
  return Rng::derive(base, input * 4 + static_cast<std::size_t>(variant));
}

RealSeries make_variant(const RealSeries& input, Variant variant,
                        std::uint64_t seed) {
  switch (variant) {
    case Variant::Original: return input;
    case Variant::Shuffled: return shuffle(input, seed);
    case Variant::PhaseRandomized: return phase_randomize(input, seed);
    case Variant::ShuffledPhaseRandomized:
      return make_surrogate(input,
                            {SurrogateKind::ShuffleThenPhaseRandomize, seed});
  }
  fail(Errc::InvalidSpec, "unknown variant");
}

}  // namespace

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Original: return "original";
    case Variant::Shuffled: return "shuffled";
    case Variant::PhaseRandomized: return "phase-randomized";
    case Variant::ShuffledPhaseRandomized: return "shuffled-phase-randomized";
  }
  return "unknown";
}

MfdfaConfig MfdfaGridSpec::resolve(std::size_t series_length) const {
  require(series_length >= 4, Errc::TooShort, "series too short to analyse");
  MfdfaConfig cfg;
  cfg.poly_order = poly_order;
  cfg.profile_order = profile_order;
  cfg.segmentation = two_pass ? Segmentation::TwoPass : Segmentation::OnePass;

  int hi = s_max;
  if (hi == 0)
    hi = std::min<int>(static_cast<int>(series_length / 4), kMaxDefaultWindow);
  require(hi > s_min, Errc::InvalidConfig,
          "window range empty: series too short or s_max too small");
  require(s_count >= 2, Errc::InvalidConfig, "need at least 2 window sizes");
  const double step =
      std::log(static_cast<double>(hi) / s_min) / (s_count - 1);
  for (int i = 0; i < s_count; ++i) {
    const int s = static_cast<int>(std::lround(s_min * std::exp(step * i)));
    if (cfg.s_grid.empty() || s > cfg.s_grid.back()) cfg.s_grid.push_back(s);
  }

  require(z_step > 0.0 && z_max > z_min, Errc::InvalidConfig, "bad moment grid");
  const int nz = static_cast<int>(std::lround((z_max - z_min) / z_step));
  for (int i = 0; i <= nz; ++i) cfg.z_grid.push_back(z_min + i * z_step);

  // Scaling-fit bounds. Explicit values pass through untouched; zeros derive
  // a subrange that stays clear of the two regimes where log F(s) bends away
  // from a power law: windows with fewer than 8 samples per polynomial
  // coefficient (detrending eats nearly all the freedom there) and windows so
  // large that fewer than 32 segments are left in the moment average. A
  // derived bound snaps to the nearest window actually in the grid; when the
  // derived subrange keeps fewer than 4 windows, the derived sides fall back
  // to the grid ends instead of failing.
  int flo = fit_lo, fhi = fit_hi;
  if (flo == 0 || fhi == 0) {
    const int want_lo = flo == 0 ? 8 * (poly_order + 1) : flo;
    const int want_hi =
        fhi == 0 ? static_cast<int>(std::min<std::size_t>(
                       series_length / 32,
                       static_cast<std::size_t>(cfg.s_grid.back())))
                 : fhi;
    int snap_lo = 0, snap_hi = 0, inside = 0;
    for (int s : cfg.s_grid)
      if (s >= want_lo && s <= want_hi) {
        if (inside == 0) snap_lo = s;
        snap_hi = s;
        ++inside;
      }
    if (inside >= 4) {
      if (flo == 0) flo = snap_lo;
      if (fhi == 0) fhi = snap_hi;
    } else {
      if (flo == 0) flo = cfg.s_grid.front();
      if (fhi == 0) fhi = cfg.s_grid.back();
    }
  }
  cfg.fit_range = {flo, fhi};
  return cfg;
}

MfdfaSuiteResult run_mfdfa_suite(const std::vector<RealSeries>& inputs,
                                 const MfdfaGridSpec& spec,
                                 std::uint64_t base_seed, int threads) {
  MfdfaSuiteResult result;
  std::vector<std::optional<MfdfaInputResult>> slots(inputs.size());
  std::vector<std::optional<SuiteFailure>> errors(inputs.size());

  // One input: let the window sweep use the threads. Many inputs: spread
  // the inputs instead. Either way the numbers are the same.
  const int outer = inputs.size() > 1 ? threads : 1;
  const int inner = inputs.size() > 1 ? 1 : threads;

  parallel_for(inputs.size(), outer, [&](std::size_t i) {
    const RealSeries& input = inputs[i];
    try {
      const MfdfaConfig cfg = spec.resolve(input.size());
      MfdfaInputResult entry;
      entry.label = input.label;
      entry.input_index = i;
      for (Variant v : kAllVariants) {
        const std::uint64_t seed =
            v == Variant::Original ? 0 : variant_seed(base_seed, i, v);
        const RealSeries series = make_variant(input, v, seed);
        VariantAnalysis& slot = entry.variants[static_cast<int>(v)];
        slot.seed = seed;
        slot.scaling = mfdfa(series, cfg, inner);
        slot.spectrum = legendre_spectrum(slot.scaling);
      }
      entry.decomposition = decompose(
          entry.variants[static_cast<int>(Variant::Original)].scaling,
          entry.variants[static_cast<int>(Variant::Shuffled)].scaling,
          entry.variants[static_cast<int>(Variant::ShuffledPhaseRandomized)]
              .scaling);
      slots[i] = std::move(entry);
    } catch (const std::exception& e) {
      errors[i] = SuiteFailure{input.label, e.what()};
    }
  });

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (slots[i]) result.per_input.push_back(std::move(*slots[i]));
    if (errors[i]) result.failures.push_back(std::move(*errors[i]));
  }

  if (result.per_input.empty()) return result;

  // Aggregate: average tau elementwise (it is what adds across companies),
  // then read h back off it; at z = 0 tau carries no h information, so h
  // itself is averaged there.
  const std::size_t nz = result.per_input.front()
                             .variants[0]
                             .scaling.z.size();
  const std::size_t n_inputs = result.per_input.size();
  for (Variant v : kAllVariants) {
    VariantAnalysis& avg = result.average[static_cast<int>(v)];
    avg.scaling.z = result.per_input.front().variants[0].scaling.z;
    avg.scaling.h.assign(nz, 0.0);
    avg.scaling.tau.assign(nz, 0.0);
    avg.scaling.stderr_h.assign(nz, 0.0);
    avg.scaling.r2.assign(nz, 0.0);
    for (const MfdfaInputResult& entry : result.per_input) {
      const ScalingResult& sc = entry.variants[static_cast<int>(v)].scaling;
      require(sc.z.size() == nz, Errc::GridMismatch,
              "inputs resolved to different moment grids");
      for (std::size_t zi = 0; zi < nz; ++zi) {
        avg.scaling.tau[zi] += sc.tau[zi];
        avg.scaling.h[zi] += sc.h[zi];
        avg.scaling.stderr_h[zi] += sc.stderr_h[zi] * sc.stderr_h[zi];
        avg.scaling.r2[zi] += sc.r2[zi];
      }
    }
    for (std::size_t zi = 0; zi < nz; ++zi) {
      avg.scaling.tau[zi] /= static_cast<double>(n_inputs);
      avg.scaling.r2[zi] /= static_cast<double>(n_inputs);
      avg.scaling.stderr_h[zi] =
          std::sqrt(avg.scaling.stderr_h[zi]) / static_cast<double>(n_inputs);
      const double z = avg.scaling.z[zi];
      avg.scaling.h[zi] = std::fabs(z) < 1e-9
                              ? avg.scaling.h[zi] / static_cast<double>(n_inputs)
                              : (avg.scaling.tau[zi] + 1.0) / z;
    }
    avg.spectrum = legendre_spectrum(avg.scaling);
  }
  result.average_decomposition = decompose(
      result.average[static_cast<int>(Variant::Original)].scaling,
      result.average[static_cast<int>(Variant::Shuffled)].scaling,
      result.average[static_cast<int>(Variant::ShuffledPhaseRandomized)]
          .scaling);
  result.has_average = true;
  return result;
}

LdiagramSuiteResult run_ldiagram_suite(const std::vector<RealSeries>& inputs,
                                       const LdiagramSpec& spec,
                                       std::uint64_t base_seed, int threads) {
  require(!spec.lags.empty(), Errc::InvalidConfig, "no lags requested");

  LdiagramSuiteResult result;
  std::vector<std::optional<LdiagramInputResult>> slots(inputs.size());
  std::vector<std::optional<SuiteFailure>> errors(inputs.size());

  const std::pair<int, int> fit{spec.fit_lo, spec.fit_hi};

  parallel_for(inputs.size(), threads, [&](std::size_t i) {
    const RealSeries& input = inputs[i];
    try {
      LdiagramInputResult entry;
      entry.label = input.label;
      entry.input_index = i;
      for (int lag : spec.lags) {
        const PointSet2D points = build_ldiagram(input, lag);
        entry.quadrants.push_back(quadrant_stats(points, input));
        const auto grid = quantize_points(points, spec.bits_per_axis);
        entry.curves.push_back(
            fractal_dimension(box_count(grid, spec.bits_per_axis), fit));
      }

      const int lag0 = spec.lags.front();
      const RealSeries shuffled_input =
          shuffle(input, Rng::derive(base_seed, i * 2));
      const RealSeries randomized_input =
          phase_randomize(input, Rng::derive(base_seed, i * 2 + 1));
      for (const RealSeries* s : {&shuffled_input, &randomized_input}) {
        const PointSet2D points = build_ldiagram(*s, lag0);
        const auto grid = quantize_points(points, spec.bits_per_axis);
        BoxCountCurve curve =
            fractal_dimension(box_count(grid, spec.bits_per_axis), fit);
        (s == &shuffled_input ? entry.shuffled_curve : entry.randomized_curve) =
            std::move(curve);
      }
      slots[i] = std::move(entry);
    } catch (const std::exception& e) {
      errors[i] = SuiteFailure{input.label, e.what()};
    }
  });

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (slots[i]) result.per_input.push_back(std::move(*slots[i]));
    if (errors[i]) result.failures.push_back(std::move(*errors[i]));
  }
  return result;
}

SuiteOutcome run_suite(const std::vector<RealSeries>& inputs,
                       const RunManifest& manifest, int threads) {
  SuiteOutcome outcome;
  outcome.mfdfa =
      run_mfdfa_suite(inputs, manifest.mfdfa, manifest.base_seed, threads);
  outcome.ldiagram = run_ldiagram_suite(inputs, manifest.ldiagram,
                                        manifest.base_seed, threads);
  return outcome;
}

}  // namespace mfsa
