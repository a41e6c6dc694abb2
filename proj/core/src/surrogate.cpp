#include "mfsa/surrogate.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "mfsa/error.hpp"
#include "mfsa/fft.hpp"
#include "mfsa/parallel.hpp"
#include "mfsa/rng.hpp"

namespace mfsa {

const char* surrogate_kind_name(SurrogateKind kind) {
  switch (kind) {
    case SurrogateKind::Shuffle: return "shuffle";
    case SurrogateKind::PhaseRandomize: return "phase-randomize";
    case SurrogateKind::ShuffleThenPhaseRandomize: return "shuffle+phase-randomize";
  }
  return "unknown";
}

RealSeries shuffle(const RealSeries& series, std::uint64_t seed) {
  require(!series.values.empty(), Errc::EmptyInput, "empty series");

  RealSeries out;
  out.label = series.label;
  out.values = series.values;
  Rng rng(seed);
  for (std::size_t i = out.values.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(out.values[i], out.values[j]);
  }
  return out;
}

RealSeries phase_randomize(const RealSeries& series, std::uint64_t seed) {
  const std::size_t n = series.values.size();
  require(n >= 2, Errc::TooShort, "need at least two samples");

  std::vector<std::complex<double>> spectrum(n);
  for (std::size_t t = 0; t < n; ++t) spectrum[t] = series.values[t];
  fft::forward(spectrum);

  // Fresh phases for the positive frequencies, mirrored with the opposite
  // sign at n-f so the inverse transform stays real. The DC bin and (for
  // even n) the Nyquist bin are left untouched: both are real for real
  // input, and DC carries the mean.
  Rng rng(seed);
  const std::size_t half = (n + 1) / 2;  // first index NOT below Nyquist
  for (std::size_t f = 1; f < half; ++f) {
    const double magnitude = std::abs(spectrum[f]);
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    spectrum[f] = std::polar(magnitude, theta);
    spectrum[n - f] = std::polar(magnitude, -theta);
  }

  fft::inverse(spectrum);
  RealSeries out;
  out.label = series.label;
  out.values.resize(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t t = 0; t < n; ++t) out.values[t] = spectrum[t].real() * scale;
  return out;
}

RealSeries make_surrogate(const RealSeries& series, const SurrogateSpec& spec) {
  switch (spec.kind) {
    case SurrogateKind::Shuffle:
      return shuffle(series, spec.seed);
    case SurrogateKind::PhaseRandomize:
      return phase_randomize(series, spec.seed);
    case SurrogateKind::ShuffleThenPhaseRandomize: {
      // Independent sub-seeds: reusing the raw seed for both stages would
      // correlate the permutation with the phases.
      const RealSeries mixed = shuffle(series, Rng::derive(spec.seed, 0));
      return phase_randomize(mixed, Rng::derive(spec.seed, 1));
    }
  }
  fail(Errc::InvalidSpec, "unknown surrogate kind");
}

std::vector<RealSeries> make_surrogates(const RealSeries& series,
                                        SurrogateKind kind,
                                        std::uint64_t base_seed,
                                        std::size_t count, int threads) {
  std::vector<RealSeries> out(count);
  parallel_for(count, threads, [&](std::size_t i) {
    out[i] = make_surrogate(series, {kind, Rng::derive(base_seed, i)});
  });
  return out;
}

}  // namespace mfsa
