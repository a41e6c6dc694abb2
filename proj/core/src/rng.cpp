#include "mfsa/rng.hpp"

#include <cmath>
#include <numbers>

#include "mfsa/error.hpp"

namespace mfsa {

std::uint64_t Rng::below(std::uint64_t n) {
  require(n >= 1, Errc::InvalidSpec, "below(0)");
  // Reject the sliver above the largest multiple of n to stay unbiased.
  const std::uint64_t cutoff = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t v = next_u64();
    if (v >= cutoff) return v % n;
  }
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

double Rng::gamma(double shape, double scale) {
  require(shape > 0.0 && scale > 0.0, Errc::InvalidSpec,
          "gamma needs positive shape and scale");
  if (shape < 1.0) {
    const double u = 1.0 - uniform();  // (0, 1]
    return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

std::uint64_t Rng::mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace mfsa
