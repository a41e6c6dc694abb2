#include "mfsa/synth.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "mfsa/error.hpp"
#include "mfsa/fft.hpp"
#include "mfsa/rng.hpp"

namespace mfsa {
namespace {

// Autocovariance of unit-variance fGn at lag k >= 0.
double fgn_autocov(double hurst, std::size_t k) {
  const double h2 = 2.0 * hurst;
  const double kd = static_cast<double>(k);
  const double prev = k == 0 ? 1.0 : std::pow(kd - 1.0, h2);
  return 0.5 * (std::pow(kd + 1.0, h2) - 2.0 * std::pow(kd, h2) + prev);
}

}  // namespace

RealSeries gaussian_white(std::size_t n, std::uint64_t seed) {
  require(n >= 1, Errc::EmptyInput, "zero-length series");
  RealSeries out;
  out.label = "gaussian-white";
  out.values.resize(n);
  Rng rng(seed);
  for (double& v : out.values) v = rng.normal();
  return out;
}

RealSeries fgn(std::size_t n, double hurst, std::uint64_t seed) {
  require(n >= 2 && std::has_single_bit(n), Errc::InvalidSpec,
          "length must be a power of two");
  require(hurst > 0.0 && hurst < 1.0, Errc::InvalidH,
          "Hurst exponent must lie in (0, 1)");

  // Embed the n-point covariance in a circulant of size 2n whose
  // eigenvalues are the FFT of the wrapped autocovariance; they are
  // non-negative for fGn, so the square roots below are real.
  const std::size_t m = 2 * n;
  std::vector<std::complex<double>> eig(m);
  for (std::size_t k = 0; k <= n; ++k) eig[k] = fgn_autocov(hurst, k);
  for (std::size_t k = 1; k < n; ++k) eig[m - k] = eig[k];
  fft::forward(eig);

  std::vector<double> root(m);
  for (std::size_t k = 0; k < m; ++k) {
    // clip the tiny negative rounding noise of exact zeros
    root[k] = std::sqrt(std::max(eig[k].real(), 0.0));
  }

  // Complex Gaussian weights with the conjugate symmetry that makes the
  // transform real. Draw order is fixed: the two real bins first, then one
  // (re, im) pair per positive frequency.
  Rng rng(seed);
  std::vector<std::complex<double>> w(m);
  w[0] = root[0] * rng.normal();
  w[n] = root[n] * rng.normal();
  const double half = std::sqrt(0.5);
  for (std::size_t k = 1; k < n; ++k) {
    const double re = rng.normal();
    const double im = rng.normal();
    w[k] = std::complex<double>(re * half, im * half) * root[k];
    w[m - k] = std::conj(w[k]);
  }

  fft::forward(w);
  RealSeries out;
  out.label = "fgn";
  out.values.resize(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::size_t t = 0; t < n; ++t) out.values[t] = w[t].real() * scale;
  return out;
}

RealSeries binomial_cascade(const CascadeSpec& spec) {
  require(spec.p > 0.0 && spec.p < 1.0, Errc::InvalidSpec,
          "mass fraction must lie in (0, 1)");
  require(spec.levels >= 1 && spec.levels <= 26, Errc::InvalidSpec,
          "levels must lie in [1, 26]");

  RealSeries out;
  out.label = "cascade";
  out.values.assign(std::size_t{1} << spec.levels, 0.0);
  out.values[0] = 1.0;
  // Split in place, coarsest level first: cell masses of level l occupy the
  // first 2^l slots.
  for (int level = 0; level < spec.levels; ++level) {
    const std::size_t cells = std::size_t{1} << level;
    for (std::size_t i = cells; i-- > 0;) {
      const double mass = out.values[i];
      out.values[2 * i] = mass * spec.p;
      out.values[2 * i + 1] = mass * (1.0 - spec.p);
    }
  }
  return out;
}

SuperstatSeries superstat_series(std::size_t n, const GammaVarianceSpec& spec) {
  require(n >= 1, Errc::EmptyInput, "zero-length series");
  require(spec.gamma > -1.0, Errc::InvalidSpec,
          "gamma must exceed -1 for a normalisable variance density");
  require(spec.delta > 0.0, Errc::InvalidSpec, "delta must be positive");

  SuperstatSeries out;
  out.values.label = "superstat";
  out.sigma.label = "superstat-sigma";
  out.values.values.resize(n);
  out.sigma.values.resize(n);

  Rng rng(spec.seed);
  for (std::size_t t = 0; t < n; ++t) {
    // inverse variance first, then the Gaussian factor: fixed draw order.
    // The density (x/delta)^gamma exp(-x/delta) is a Gamma with shape
    // gamma+1 and scale delta -- the shape is off by one from gamma, which
    // is why the inverse-variance mean (gamma+1)*delta is pinned by a test.
    const double x = rng.gamma(spec.gamma + 1.0, spec.delta);
    const double sigma = 1.0 / std::sqrt(x);
    out.sigma.values[t] = sigma;
    out.values.values[t] = sigma * rng.normal();
  }
  return out;
}

double q_from_gamma(double gamma) {
  require(gamma > -1.5, Errc::DomainError, "gamma must exceed -3/2");
  return 1.0 + 2.0 / (3.0 + 2.0 * gamma);
}

double gamma_from_q(double q) {
  require(q > 1.0 && q < 3.0, Errc::DomainError, "q must lie in (1, 3)");
  return 1.0 / (q - 1.0) - 1.5;
}

}  // namespace mfsa
