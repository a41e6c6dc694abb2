#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mfsa {

// One row of a day,minute,price input file. `day` is a trading-day index,
// `minute` the minute of the trading day; both only need to order records.
struct PriceRecord {
  std::int32_t day = 0;
  std::int32_t minute = 0;
  double price = 0.0;
};

// Calendar position of one sample, carried through the return pipeline so
// the intraday activity pattern can be estimated and divided out.
struct CalendarTag {
  std::int32_t day = 0;
  std::int32_t minute = 0;
};

// Ordered sequence of real values, optionally tagged with calendar
// positions. Carrier type for returns, volatilities, surrogates and
// synthetic series alike.
struct RealSeries {
  std::vector<double> values;
  std::vector<CalendarTag> tags;  // empty, or exactly one tag per value
  std::string label;

  std::size_t size() const noexcept { return values.size(); }
  bool has_tags() const noexcept { return !tags.empty(); }
};

}  // namespace mfsa
