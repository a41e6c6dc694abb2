#pragma once

#include <cstdint>

#include "mfsa/series.hpp"

namespace mfsa {

// Gamma-distributed inverse variance: x = 1/sigma^2 has density proportional
// to (x/delta)^gamma * exp(-x/delta), i.e. Gamma with shape gamma+1 and scale
// delta, so E[1/sigma^2] = (gamma+1)*delta.
// Mixing Gaussians over sigma gives heavy-tailed values whose marginal is a
// q-Gaussian with q = 1 + 2/(3 + 2*gamma).
struct GammaVarianceSpec {
  double gamma = 1.82;
  double delta = 2.0;
  std::uint64_t seed = 0;
};

// Deterministic multiplicative measure: at every level the left half of
// each cell receives fraction p of its mass. 2^levels cells.
struct CascadeSpec {
  double p = 0.3;
  int levels = 16;
};

// Independent standard normals.
RealSeries gaussian_white(std::size_t n, std::uint64_t seed);

// Fractional Gaussian noise with Hurst exponent in (0, 1), unit variance,
// by circulant embedding of the autocovariance (exact in distribution).
// n must be a power of two.
RealSeries fgn(std::size_t n, double hurst, std::uint64_t seed);

RealSeries binomial_cascade(const CascadeSpec& spec);

struct SuperstatSeries {
  RealSeries values;  // sigma(t) * omega(t), omega iid standard normal
  RealSeries sigma;   // the volatility draw behind each value
};

SuperstatSeries superstat_series(std::size_t n, const GammaVarianceSpec& spec);

// Tail-weight exponent of the variance mixture and back.
double q_from_gamma(double gamma);
double gamma_from_q(double q);

}  // namespace mfsa
