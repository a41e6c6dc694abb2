#include <doctest.h>

#include <cmath>
#include <vector>

#include "mfsa/error.hpp"
#include "mfsa/preprocess.hpp"
#include "mfsa/rng.hpp"
#include "mfsa/stats.hpp"

using mfsa::CalendarTag;
using mfsa::PriceRecord;
using mfsa::RealSeries;

namespace {

std::vector<PriceRecord> two_day_prices() {
  return {
      {1, 0, 100.0}, {1, 1, 101.0}, {1, 2, 99.5},   // day 1
      {2, 0, 102.0}, {2, 1, 102.0}, {2, 2, 103.1},  // day 2
  };
}

}  // namespace

TEST_CASE("log returns skip day boundaries and tag the later record") {
  const auto prices = two_day_prices();
  const RealSeries r = mfsa::log_returns(prices);

  REQUIRE(r.size() == 4);  // 2 per day, overnight move dropped
  CHECK(r.values[0] == doctest::Approx(std::log(101.0 / 100.0)).epsilon(1e-12));
  CHECK(r.values[1] == doctest::Approx(std::log(99.5 / 101.0)).epsilon(1e-12));
  CHECK(r.values[2] == doctest::Approx(std::log(102.0 / 102.0)).epsilon(1e-12));
  CHECK(r.values[3] == doctest::Approx(std::log(103.1 / 102.0)).epsilon(1e-12));

  REQUIRE(r.tags.size() == 4);
  CHECK(r.tags[0].day == 1);
  CHECK(r.tags[0].minute == 1);
  CHECK(r.tags[2].day == 2);
  CHECK(r.tags[2].minute == 1);
}

TEST_CASE("log returns validate their input") {
  CHECK_THROWS_AS(mfsa::log_returns(std::vector<PriceRecord>{}), mfsa::Error);

  std::vector<PriceRecord> bad_price{{1, 0, 100.0}, {1, 1, -2.0}};
  CHECK_THROWS_AS(mfsa::log_returns(bad_price), mfsa::Error);

  std::vector<PriceRecord> out_of_order{{1, 5, 100.0}, {1, 3, 101.0}};
  CHECK_THROWS_AS(mfsa::log_returns(out_of_order), mfsa::Error);
}

TEST_CASE("intraday profile averages absolute returns per minute") {
  RealSeries r;
  r.values = {0.02, -0.04, 0.06, 0.01};
  r.tags = {{1, 10}, {1, 20}, {2, 10}, {2, 20}};
  const mfsa::IntradayProfile p = mfsa::intraday_profile(r);

  REQUIRE(p.minute.size() == 2);
  CHECK(p.minute[0] == 10);
  CHECK(p.minute[1] == 20);
  CHECK(p.mean_abs_return[0] == doctest::Approx(0.04).epsilon(1e-12));
  CHECK(p.mean_abs_return[1] == doctest::Approx(0.025).epsilon(1e-12));
}

TEST_CASE("intraday profile rejects untagged or all-zero minutes") {
  RealSeries untagged;
  untagged.values = {0.1, 0.2};
  CHECK_THROWS_AS(mfsa::intraday_profile(untagged), mfsa::Error);

  RealSeries zero_minute;
  zero_minute.values = {0.0, 0.1};
  zero_minute.tags = {{1, 5}, {1, 6}};
  CHECK_THROWS_AS(mfsa::intraday_profile(zero_minute), mfsa::Error);
}

TEST_CASE("deseasonalizing flattens the profile it was built from") {
  // Synthetic two-week month with a strong U-shape over 60 minutes.
  mfsa::Rng rng(77);
  RealSeries r;
  for (int day = 1; day <= 10; ++day) {
    for (int minute = 0; minute < 60; ++minute) {
      const double shape = 1.0 + 2.0 * std::cos((minute - 30.0) / 30.0);
      r.values.push_back(shape * rng.normal());
      r.tags.push_back({day, minute});
    }
  }
  const mfsa::IntradayProfile profile = mfsa::intraday_profile(r);
  const RealSeries flat = mfsa::deseasonalize(r, profile);

  REQUIRE(flat.size() == r.size());
  CHECK(flat.tags.empty());

  // Rebuilding the profile on the flattened series gives 1 at every minute.
  RealSeries tagged = flat;
  tagged.tags = r.tags;
  const mfsa::IntradayProfile after = mfsa::intraday_profile(tagged);
  for (double v : after.mean_abs_return)
    CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("deseasonalize rejects minutes missing from the profile") {
  RealSeries r;
  r.values = {0.1};
  r.tags = {{1, 42}};
  mfsa::IntradayProfile p;
  p.minute = {10};
  p.mean_abs_return = {0.5};
  CHECK_THROWS_AS(mfsa::deseasonalize(r, p), mfsa::Error);
}

TEST_CASE("standardize gives zero mean and unit population deviation") {
  RealSeries s;
  s.values = {1.0, 2.0, 3.0, 4.0, 10.0};
  const RealSeries z = mfsa::standardize(s);
  CHECK(mfsa::mean(z.values) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(mfsa::variance(z.values) == doctest::Approx(1.0).epsilon(1e-12));

  RealSeries flat;
  flat.values = {3.0, 3.0, 3.0};
  CHECK_THROWS_AS(mfsa::standardize(flat), mfsa::Error);
}

TEST_CASE("sign/magnitude split recombines exactly") {
  mfsa::Rng rng(5);
  RealSeries s;
  for (int i = 0; i < 1000; ++i) s.values.push_back(rng.normal());
  s.values[17] = 0.0;  // zeros must survive the round trip
  s.values[18] = -0.0;

  const mfsa::SignMagnitude parts = mfsa::split_sign_magnitude(s);
  const RealSeries back = mfsa::recombine(parts.signs, parts.magnitudes);
  REQUIRE(back.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(back.values[i] == s.values[i]);
    CHECK(parts.magnitudes.values[i] >= 0.0);
    CHECK((parts.signs.values[i] == 1.0 || parts.signs.values[i] == 0.0 ||
           parts.signs.values[i] == -1.0));
  }
}

TEST_CASE("recombine validates its factors") {
  RealSeries signs;
  signs.values = {0.5};  // not a sign
  RealSeries mags;
  mags.values = {1.0};
  CHECK_THROWS_AS(mfsa::recombine(signs, mags), mfsa::Error);

  signs.values = {1.0};
  mags.values = {-1.0};  // not a magnitude
  CHECK_THROWS_AS(mfsa::recombine(signs, mags), mfsa::Error);

  RealSeries longer;
  longer.values = {1.0, 1.0};
  mags.values = {1.0};
  CHECK_THROWS_AS(mfsa::recombine(longer, mags), mfsa::Error);
}
