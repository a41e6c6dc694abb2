#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mfsa/parallel.hpp"
#include "mfsa/rng.hpp"
#include "mfsa/stats.hpp"

TEST_CASE("identical seeds give identical streams") {
  mfsa::Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
  for (int i = 0; i < 100; ++i) CHECK(a.gamma(2.5, 1.0) == b.gamma(2.5, 1.0));
}

TEST_CASE("derived seeds separate by counter and base") {
  const auto s0 = mfsa::Rng::derive(1, 0);
  const auto s1 = mfsa::Rng::derive(1, 1);
  const auto t0 = mfsa::Rng::derive(2, 0);
  CHECK(s0 != s1);
  CHECK(s0 != t0);
  CHECK(mfsa::Rng::derive(1, 0) == s0);  // pure function
}

TEST_CASE("uniform stays in [0,1) and below() respects its bound") {
  mfsa::Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  std::vector<int> hits(3, 0);
  for (int i = 0; i < 30000; ++i) {
    const auto v = rng.below(3);
    REQUIRE(v < 3);
    ++hits[static_cast<std::size_t>(v)];
  }
  for (int h : hits) CHECK(std::abs(h - 10000) < 400);  // ~5 sigma
}

TEST_CASE("normal draws match the first two moments and have thin tails") {
  mfsa::Rng rng(101);
  std::vector<double> x(100000);
  for (double& v : x) v = rng.normal();
  CHECK(std::abs(mfsa::mean(x)) < 0.02);
  CHECK(mfsa::variance(x) == doctest::Approx(1.0).epsilon(0.03));
  CHECK(std::abs(mfsa::excess_kurtosis(x)) < 0.1);
}

TEST_CASE("gamma draws match mean and variance for shapes below and above 1") {
  mfsa::Rng rng(55);
  for (const double shape : {0.5, 1.0, 2.84, 9.0}) {
    const double scale = 1.7;
    std::vector<double> x(100000);
    for (double& v : x) v = rng.gamma(shape, scale);
    CHECK(mfsa::mean(x) ==
          doctest::Approx(shape * scale).epsilon(0.03));
    CHECK(mfsa::variance(x) ==
          doctest::Approx(shape * scale * scale).epsilon(0.08));
    for (double v : x) REQUIRE(v > 0.0);
  }
}

TEST_CASE("summary statistics agree with hand values") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(mfsa::mean(v) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(mfsa::variance(v) == doctest::Approx(1.25).epsilon(1e-15));

  // Alternating series: lag-1 autocorrelation -1, excess kurtosis -2.
  std::vector<double> alt(1000);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2 ? 1.0 : -1.0;
  CHECK(mfsa::autocorrelation(alt, 1) == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(mfsa::excess_kurtosis(alt) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("line fit is exact on exact lines") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 2.0 * x[i] + 1.0;
  const mfsa::LineFit fit = mfsa::fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.stderr_slope == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("line fit standard error matches the closed form") {
  // y = x with one bumped point; SSR and Sxx are small integers.
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{0.0, 1.0, 2.0, 4.0};
  const mfsa::LineFit fit = mfsa::fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(1.3).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(-0.2).epsilon(1e-9));
  // residuals: 0.2, -0.1, -0.4, 0.3 -> SSR = 0.3; Sxx = 5; n-2 = 2
  CHECK(fit.stderr_slope ==
        doctest::Approx(std::sqrt(0.3 / 2.0 / 5.0)).epsilon(1e-9));
}

TEST_CASE("parallel_for covers every index exactly once") {
  const std::size_t n = 10000;
  std::vector<std::atomic<int>> touched(n);
  mfsa::parallel_for(n, 4, [&](std::size_t i) { touched[i].fetch_add(1); });
  for (std::size_t i = 0; i < n; ++i) CHECK(touched[i].load() == 1);
}

TEST_CASE("parallel_for propagates the first worker exception") {
  CHECK_THROWS_AS(mfsa::parallel_for(100, 3,
                                     [](std::size_t i) {
                                       if (i == 57)
                                         throw std::runtime_error("boom");
                                     }),
                  std::runtime_error);
}
