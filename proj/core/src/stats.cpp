#include "mfsa/stats.hpp"

#include <cmath>
#include <cstddef>

#include "mfsa/error.hpp"

namespace mfsa {

double mean(std::span<const double> v) {
  require(!v.empty(), Errc::EmptyInput, "mean of empty range");
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
  const double m = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return acc / static_cast<double>(v.size());
}

double autocorrelation(std::span<const double> v, int lag) {
  require(lag >= 0, Errc::InvalidSpec, "negative lag");
  require(static_cast<std::size_t>(lag) < v.size(), Errc::LagTooLarge,
          "lag must be shorter than the series");
  const double m = mean(v);
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t + lag < v.size(); ++t)
    num += (v[t] - m) * (v[t + lag] - m);
  for (double x : v) den += (x - m) * (x - m);
  require(den > 0.0, Errc::ZeroVariance, "constant series has no autocorrelation");
  return num / den;
}

double excess_kurtosis(std::span<const double> v) {
  const double m = mean(v);
  double m2 = 0.0, m4 = 0.0;
  for (double x : v) {
    const double d = x - m;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  const double n = static_cast<double>(v.size());
  m2 /= n;
  m4 /= n;
  require(m2 > 0.0, Errc::ZeroVariance, "constant series has no kurtosis");
  return m4 / (m2 * m2) - 3.0;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), Errc::LengthMismatch, "fit_line: x/y size");
  const std::size_t n = x.size();
  require(n >= 2, Errc::InsufficientScales, "fit_line needs >= 2 points");

  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(sxx > 0.0, Errc::DegenerateRange, "fit_line: all x equal");

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;

  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.stderr_slope = n > 2 ? std::sqrt(ss_res / (static_cast<double>(n) - 2.0) / sxx) : 0.0;
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace mfsa
