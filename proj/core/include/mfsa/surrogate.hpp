#pragma once

#include <cstdint>
#include <vector>

#include "mfsa/series.hpp"

namespace mfsa {

// Shuffle destroys temporal order but keeps the value distribution;
// PhaseRandomize keeps the power spectrum but Gaussianises the values;
// the combination destroys both structures and leaves featureless noise.
enum class SurrogateKind { Shuffle, PhaseRandomize, ShuffleThenPhaseRandomize };

const char* surrogate_kind_name(SurrogateKind kind);

struct SurrogateSpec {
  SurrogateKind kind = SurrogateKind::Shuffle;
  std::uint64_t seed = 0;
};

// Uniform random permutation of the values (Fisher-Yates). Deterministic
// per (series, seed). Tags are dropped: a permuted sample has no calendar.
RealSeries shuffle(const RealSeries& series, std::uint64_t seed);

// Keeps every Fourier amplitude, replaces the phases with fresh uniform
// draws (conjugate-symmetric, so the output is real). The mean and the
// periodogram of the input are preserved to rounding.
RealSeries phase_randomize(const RealSeries& series, std::uint64_t seed);

RealSeries make_surrogate(const RealSeries& series, const SurrogateSpec& spec);

// Batch of `count` surrogates. Per-surrogate seeds derive from (base_seed,
// counter), so the set is identical however the work is scheduled;
// `threads` only affects wall time.
std::vector<RealSeries> make_surrogates(const RealSeries& series,
                                        SurrogateKind kind,
                                        std::uint64_t base_seed,
                                        std::size_t count, int threads = 1);

}  // namespace mfsa
