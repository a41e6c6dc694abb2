#include "mfsa/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>

#include "mfsa/error.hpp"
#include "mfsa/stats.hpp"

namespace mfsa {

RealSeries log_returns(std::span<const PriceRecord> prices) {
  require(prices.size() >= 2, Errc::TooShort, "need at least two prices");
  for (std::size_t i = 0; i < prices.size(); ++i) {
    require(prices[i].price > 0.0, Errc::NonPositivePrice,
            "price at row " + std::to_string(i));
    if (i > 0) {
      const auto& a = prices[i - 1];
      const auto& b = prices[i];
      const bool ordered = b.day > a.day || (b.day == a.day && b.minute > a.minute);
      require(ordered, Errc::MalformedInput,
              "records not strictly increasing at row " + std::to_string(i));
    }
  }

  RealSeries out;
  out.values.reserve(prices.size() - 1);
  out.tags.reserve(prices.size() - 1);
  for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
    if (prices[i].day != prices[i + 1].day) continue;  // no overnight returns
    out.values.push_back(std::log(prices[i + 1].price) - std::log(prices[i].price));
    out.tags.push_back({prices[i + 1].day, prices[i + 1].minute});
  }
  require(!out.values.empty(), Errc::EmptyInput,
          "no same-day consecutive records");
  return out;
}

IntradayProfile intraday_profile(const RealSeries& returns) {
  require(!returns.values.empty(), Errc::EmptyInput, "empty return series");
  require(returns.has_tags() && returns.tags.size() == returns.values.size(),
          Errc::MissingTags, "intraday profile needs tagged returns");

  // std::map keeps minutes sorted as required by the output contract.
  std::map<std::int32_t, std::pair<double, std::size_t>> acc;
  for (std::size_t i = 0; i < returns.values.size(); ++i) {
    auto& slot = acc[returns.tags[i].minute];
    slot.first += std::fabs(returns.values[i]);
    slot.second += 1;
  }

  IntradayProfile profile;
  profile.minute.reserve(acc.size());
  profile.mean_abs_return.reserve(acc.size());
  for (const auto& [minute, slot] : acc) {
    const double lambda = slot.first / static_cast<double>(slot.second);
    require(lambda > 0.0, Errc::ZeroProfileMinute,
            "all returns at minute " + std::to_string(minute) + " are zero");
    profile.minute.push_back(minute);
    profile.mean_abs_return.push_back(lambda);
  }
  return profile;
}

RealSeries deseasonalize(const RealSeries& returns, const IntradayProfile& profile) {
  require(!returns.values.empty(), Errc::EmptyInput, "empty return series");
  require(returns.has_tags() && returns.tags.size() == returns.values.size(),
          Errc::MissingTags, "deseasonalize needs tagged returns");
  require(profile.minute.size() == profile.mean_abs_return.size(),
          Errc::LengthMismatch, "profile minute/value size");

  std::unordered_map<std::int32_t, double> lambda;
  lambda.reserve(profile.minute.size());
  for (std::size_t i = 0; i < profile.minute.size(); ++i)
    lambda.emplace(profile.minute[i], profile.mean_abs_return[i]);

  RealSeries out;
  out.label = returns.label;
  out.values.reserve(returns.values.size());
  for (std::size_t i = 0; i < returns.values.size(); ++i) {
    const auto it = lambda.find(returns.tags[i].minute);
    require(it != lambda.end(), Errc::UnknownMinute,
            "minute " + std::to_string(returns.tags[i].minute) +
                " missing from profile");
    out.values.push_back(returns.values[i] / it->second);
  }
  return out;  // tags intentionally dropped
}

RealSeries standardize(const RealSeries& series) {
  require(!series.values.empty(), Errc::EmptyInput, "empty series");
  const double m = mean(series.values);
  const double sd = std::sqrt(variance(series.values));
  require(sd > 0.0, Errc::ZeroVariance, "constant series cannot be standardized");

  RealSeries out;
  out.label = series.label;
  out.tags = series.tags;
  out.values.reserve(series.values.size());
  for (double x : series.values) out.values.push_back((x - m) / sd);
  return out;
}

SignMagnitude split_sign_magnitude(const RealSeries& series) {
  require(!series.values.empty(), Errc::EmptyInput, "empty series");
  SignMagnitude parts;
  parts.signs.label = series.label;
  parts.magnitudes.label = series.label;
  parts.signs.tags = series.tags;
  parts.magnitudes.tags = series.tags;
  parts.signs.values.reserve(series.values.size());
  parts.magnitudes.values.reserve(series.values.size());
  for (double x : series.values) {
    parts.signs.values.push_back(x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0));
    parts.magnitudes.values.push_back(std::fabs(x));
  }
  return parts;
}

RealSeries recombine(const RealSeries& signs, const RealSeries& magnitudes) {
  require(signs.values.size() == magnitudes.values.size(), Errc::LengthMismatch,
          "sign/magnitude length");
  require(!signs.values.empty(), Errc::EmptyInput, "empty series");

  RealSeries out;
  out.label = signs.label;
  out.tags = signs.tags;
  out.values.reserve(signs.values.size());
  for (std::size_t i = 0; i < signs.values.size(); ++i) {
    const double s = signs.values[i];
    const double m = magnitudes.values[i];
    require(s == 1.0 || s == -1.0 || s == 0.0, Errc::DomainError,
            "sign values must be -1, 0 or +1");
    require(m >= 0.0, Errc::NegativeMagnitude, "negative magnitude");
    out.values.push_back(s * m);
  }
  return out;
}

}  // namespace mfsa
