#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mfsa/ldiagram.hpp"
#include "mfsa/mfdfa.hpp"
#include "mfsa/series.hpp"

namespace mfsa {

// The four series variants analysed side by side: the data itself, a
// shuffled copy (correlations destroyed), a phase-randomized copy
// (distribution Gaussianised) and both destructions applied in turn.
enum class Variant : int {
  Original = 0,
  Shuffled = 1,
  PhaseRandomized = 2,
  ShuffledPhaseRandomized = 3,
};

inline constexpr std::array<Variant, 4> kAllVariants = {
    Variant::Original, Variant::Shuffled, Variant::PhaseRandomized,
    Variant::ShuffledPhaseRandomized};

const char* variant_name(Variant v);

// Recipe for per-series analysis grids; resolve() turns it into a concrete
// configuration once the series length is known. Zeros mean "derive".
struct MfdfaGridSpec {
  int poly_order = 5;
  int profile_order = 2;
  bool two_pass = false;
  int s_min = 8;
  int s_max = 0;  // 0: min(length/4, 11585)
  int s_count = 30;
  double z_min = -3.0;
  double z_max = 5.0;
  double z_step = 0.25;
  int fit_lo = 0;  // 0: smallest window with >= 8 samples per detrending
                   // coefficient, i.e. >= 8*(poly_order+1)
  int fit_hi = 0;  // 0: largest window leaving >= 32 segments (length/32);
                   // both bounds fall back to the grid ends when fewer than
                   // 4 windows would remain

  MfdfaConfig resolve(std::size_t series_length) const;
};

struct LdiagramSpec {
  std::vector<int> lags{1, 2, 10, 50};
  int bits_per_axis = 16;
  int fit_lo = 2;
  int fit_hi = 8;
};

struct VariantAnalysis {
  ScalingResult scaling;
  MultifractalSpectrum spectrum;
  std::uint64_t seed = 0;  // 0 for the original series
};

struct MfdfaInputResult {
  std::string label;
  std::size_t input_index = 0;  // position in the submitted batch
  std::array<VariantAnalysis, 4> variants;
  Decomposition decomposition;
};

struct SuiteFailure {
  std::string label;
  std::string message;
};

struct MfdfaSuiteResult {
  std::vector<MfdfaInputResult> per_input;  // successes, in input order
  std::vector<SuiteFailure> failures;
  // Cross-input aggregate: tau averaged elementwise per variant, h and the
  // spectrum recomputed from the average. Valid when has_average is set.
  std::array<VariantAnalysis, 4> average;
  Decomposition average_decomposition;
  bool has_average = false;
};

// Runs the four-variant scaling analysis on every input. A failing input is
// recorded and skipped, never fatal for the batch. Surrogate seeds derive
// from (base_seed, input index, variant), so any scheduling gives the same
// numbers.
MfdfaSuiteResult run_mfdfa_suite(const std::vector<RealSeries>& inputs,
                                 const MfdfaGridSpec& spec,
                                 std::uint64_t base_seed, int threads = 1);

struct LdiagramInputResult {
  std::string label;
  std::size_t input_index = 0;
  std::vector<QuadrantStats> quadrants;  // one per lag
  std::vector<BoxCountCurve> curves;     // one per lag, dimension fitted
  BoxCountCurve shuffled_curve;          // first lag, shuffled input
  BoxCountCurve randomized_curve;        // first lag, phase-randomized input
};

struct LdiagramSuiteResult {
  std::vector<LdiagramInputResult> per_input;
  std::vector<SuiteFailure> failures;
};

LdiagramSuiteResult run_ldiagram_suite(const std::vector<RealSeries>& inputs,
                                       const LdiagramSpec& spec,
                                       std::uint64_t base_seed,
                                       int threads = 1);

// Everything that determines a suite run's outputs, plus a timestamp that
// is informational only: re-running a manifest reproduces every result
// file byte for byte, whatever the thread count.
struct RunManifest {
  std::string command = "suite";
  std::string tool_version;
  std::string rng_algorithm;
  std::uint64_t base_seed = 1;
  std::vector<std::string> inputs;  // paths as given on the command line
  MfdfaGridSpec mfdfa;
  LdiagramSpec ldiagram;
  std::string timestamp;
};

struct SuiteOutcome {
  MfdfaSuiteResult mfdfa;
  LdiagramSuiteResult ldiagram;
  std::vector<SuiteFailure> load_failures;  // inputs that never parsed
};

SuiteOutcome run_suite(const std::vector<RealSeries>& inputs,
                       const RunManifest& manifest, int threads = 1);

}  // namespace mfsa
