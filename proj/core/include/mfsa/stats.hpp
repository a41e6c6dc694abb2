#pragma once

#include <span>

namespace mfsa {

double mean(std::span<const double> v);

// Population variance (divides by n, not n-1); matches the normalisation
// used when standardising series to unit width.
double variance(std::span<const double> v);

// Autocorrelation at the given lag, normalised by the lag-0 value.
double autocorrelation(std::span<const double> v, int lag);

// Fourth standardised moment minus 3; zero for a Gaussian sample in
// expectation.
double excess_kurtosis(std::span<const double> v);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;  // from the residual variance, n-2 dof
  double r2 = 1.0;
};

// Ordinary least squares of y against x. Needs at least two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace mfsa
