#pragma once

#include <cstdint>
#include <random>

namespace mfsa {

// Deterministic random source. The raw stream is std::mt19937_64, whose
// output sequence is pinned by the standard; all value transforms (uniform
// doubles, normals, gammas) are implemented here rather than taken from
// <random> distributions, which are implementation-defined. Identical seeds
// therefore give identical series on every platform and toolchain.
class Rng {
 public:
  // Recorded in run metadata so outputs can be traced to the generator.
  static constexpr const char* kAlgorithm = "mt19937_64+boxmuller";

  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n);

  // Standard normal via Box-Muller; the second draw of each pair is cached.
  double normal();

  // Gamma(shape, scale) via the Marsaglia-Tsang squeeze, with the usual
  // power boost for shape < 1.
  double gamma(double shape, double scale);

  // splitmix64 finalizer: mixes a word to a well-spread value.
  static std::uint64_t mix(std::uint64_t x);

  // Derives an independent stream seed from a base seed and a slot counter;
  // used so batch work can be scheduled in any order.
  static std::uint64_t derive(std::uint64_t base, std::uint64_t counter) {
    return mix(base + 0x9e3779b97f4a7c15ull * (counter + 1));
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mfsa
