#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mfsa/series.hpp"

namespace mfsa {

// Mean absolute return per minute of the trading day; used to divide out
// the intraday activity pattern (the open/close U-shape).
struct IntradayProfile {
  std::vector<std::int32_t> minute;     // sorted, unique
  std::vector<double> mean_abs_return;  // same length, strictly positive
};

// Log returns ln S(t+1) - ln S(t) of consecutive same-day records. Returns
// that would span a day boundary are dropped, so overnight moves never
// enter the series. Each return carries the tag of its later record.
RealSeries log_returns(std::span<const PriceRecord> prices);

// Averages |r| per minute of day over all tagged samples.
IntradayProfile intraday_profile(const RealSeries& returns);

// Divides each return by the profile value at its minute. The result is
// untagged: once the seasonality is gone the calendar has done its job.
RealSeries deseasonalize(const RealSeries& returns, const IntradayProfile& profile);

// Shifts and scales to zero mean, unit population standard deviation.
RealSeries standardize(const RealSeries& series);

struct SignMagnitude {
  RealSeries signs;       // -1, 0, +1
  RealSeries magnitudes;  // |r|
};

// Splits a series into sign and magnitude factors; recombine() restores the
// original values exactly (elementwise product).
SignMagnitude split_sign_magnitude(const RealSeries& series);
RealSeries recombine(const RealSeries& signs, const RealSeries& magnitudes);

}  // namespace mfsa
