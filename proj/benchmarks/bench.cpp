// Microbenchmarks for the hot paths: the segment sweep, box counting,
// phase randomization and long-memory synthesis. Run with --benchmark_filter
// to isolate one.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "mfsa/ldiagram.hpp"
#include "mfsa/mfdfa.hpp"
#include "mfsa/rng.hpp"
#include "mfsa/suite.hpp"
#include "mfsa/surrogate.hpp"
#include "mfsa/synth.hpp"

namespace {

void bm_fluctuation_table(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const mfsa::RealSeries x = mfsa::gaussian_white(n, 1);
  const mfsa::MfdfaConfig cfg = mfsa::MfdfaGridSpec{}.resolve(n);
  const mfsa::RealSeries profile = mfsa::build_profile(x, cfg.profile_order);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mfsa::fluctuation_table(profile, cfg));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(bm_fluctuation_table)->Range(1 << 12, 1 << 16)->Complexity();

void bm_box_count(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  mfsa::Rng rng(2);
  std::vector<mfsa::GridPoint> pts(n);
  for (auto& p : pts) {
    p.x = static_cast<std::uint32_t>(rng.below(1u << 16));
    p.y = static_cast<std::uint32_t>(rng.below(1u << 16));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(mfsa::box_count(pts, 16));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(bm_box_count)->Range(1 << 12, 1 << 18)->Complexity();

void bm_phase_randomize(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const mfsa::RealSeries x = mfsa::gaussian_white(n, 3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mfsa::phase_randomize(x, ++seed));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(bm_phase_randomize)->Range(1 << 12, 1 << 18)->Complexity();

void bm_fgn(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mfsa::fgn(n, 0.8, ++seed));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(bm_fgn)->Range(1 << 12, 1 << 18)->Complexity();

}  // namespace

BENCHMARK_MAIN();
