// Acceptance gate: every shipping criterion checked against a closed form
// or an independent oracle, one [PASS]/[FAIL] line each. The first argument
// is the path to the command-line binary, exercised by the reproducibility
// criterion. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mfsa/density.hpp"
#include "mfsa/fft.hpp"
#include "mfsa/io.hpp"
#include "mfsa/ldiagram.hpp"
#include "mfsa/mfdfa.hpp"
#include "mfsa/rng.hpp"
#include "mfsa/stats.hpp"
#include "mfsa/suite.hpp"
#include "mfsa/surrogate.hpp"
#include "mfsa/synth.hpp"

#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int id, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s — %s\n", pass ? "PASS" : "FAIL", id,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// max over z of |tau(z) - (z/2 - 1)|, the closed-form tau of an
// uncorrelated Gaussian series, under the library's default analysis.
double white_noise_tau_deviation(const mfsa::RealSeries& series) {
  const mfsa::MfdfaConfig cfg = mfsa::MfdfaGridSpec{}.resolve(series.size());
  const mfsa::ScalingResult r = mfsa::mfdfa(series, cfg);
  double worst = 0.0;
  for (std::size_t i = 0; i < r.z.size(); ++i)
    worst = std::max(worst, std::abs(r.tau[i] - (r.z[i] / 2.0 - 1.0)));
  return worst;
}

// ---------------------------------------------------------------- 1
void criterion_gaussian_null() {
  Timer timer;
  // Closed form: tau(z) = z/2 - 1. The pinned realisation is held to the
  // 0.1 band; the 0.05 band applies to the 30-seed averaged tau curve,
  // where sampling noise cancels. A single run's extreme-z tau carries
  // ~0.06 of irreducible estimator noise at this length, so no per-run
  // gate can sit at 0.05 (the per-run worst is still reported).
  const int seeds = 30;
  double pinned = 0.0, worst = 0.0;
  std::vector<double> z, avg_tau;
  for (int seed = 1; seed <= seeds; ++seed) {
    const mfsa::RealSeries x = mfsa::gaussian_white(1 << 16, seed);
    const mfsa::MfdfaConfig cfg = mfsa::MfdfaGridSpec{}.resolve(x.size());
    const mfsa::ScalingResult r = mfsa::mfdfa(x, cfg);
    if (z.empty()) {
      z = r.z;
      avg_tau.assign(z.size(), 0.0);
    }
    double dev = 0.0;
    for (std::size_t i = 0; i < r.z.size(); ++i) {
      avg_tau[i] += r.tau[i];
      dev = std::max(dev, std::abs(r.tau[i] - (r.z[i] / 2.0 - 1.0)));
    }
    if (seed == 1) pinned = dev;
    worst = std::max(worst, dev);
  }
  double avg_dev = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i)
    avg_dev = std::max(avg_dev,
                       std::abs(avg_tau[i] / seeds - (z[i] / 2.0 - 1.0)));
  const double elapsed = timer.seconds();
  const bool pass = pinned < 0.1 && avg_dev < 0.05 && elapsed < 30.0;
  report(1, "uncorrelated Gaussian null", pass,
         "pinned-run dev " + fmt(pinned) + " (<0.1), 30-seed mean-curve dev " +
             fmt(avg_dev) + " (<0.05), per-run worst " + fmt(worst) + ", " +
             fmt(elapsed) + " s (<30)");
}

// ---------------------------------------------------------------- 2
void criterion_monofractal_recovery() {
  Timer timer;
  bool pass = true;
  std::string detail;
  for (const double H : {0.3, 0.5, 0.8}) {
    const mfsa::RealSeries x = mfsa::fgn(1 << 16, H, 101);
    const mfsa::MfdfaConfig cfg = mfsa::MfdfaGridSpec{}.resolve(x.size());
    const mfsa::ScalingResult r = mfsa::mfdfa(x, cfg);
    const mfsa::MultifractalSpectrum spec = mfsa::legendre_spectrum(r);
    const double h_err = std::abs(spec.hurst - H);
    const double width = std::abs(spec.delta_h);
    pass = pass && h_err < 0.04 && width < 0.08;
    detail += "H=" + fmt(H) + ": |h2-H|=" + fmt(h_err) + " dh=" + fmt(width) +
              "; ";
  }
  const double elapsed = timer.seconds();
  pass = pass && elapsed < 60.0;
  report(2, "monofractal recovery for fractional Gaussian noise", pass,
         detail + fmt(elapsed) + " s (<60)");
}

// ---------------------------------------------------------------- 3
void criterion_cascade_oracle() {
  Timer timer;
  const mfsa::RealSeries cascade = mfsa::binomial_cascade({0.3, 16});

  // A mass series carries its own integration, hence one profile pass. The
  // cascade is self-similar only across its own dyadic blocks: a window
  // that is not a power of two straddles cells of unlike mass and bends
  // the scaling, so the grid is pinned to 8..8192 by factors of two and
  // the fit starts where each window spans many cells.
  mfsa::MfdfaGridSpec spec;
  spec.profile_order = 1;
  spec.s_max = 8192;
  spec.s_count = 11;
  spec.fit_lo = 256;
  spec.fit_hi = 8192;
  const mfsa::MfdfaConfig cfg = spec.resolve(cascade.size());
  const mfsa::ScalingResult r = mfsa::mfdfa(cascade, cfg);
  const mfsa::MultifractalSpectrum mf = mfsa::legendre_spectrum(r);

  const oracle::PartitionSpectrum pf =
      oracle::partition_spectrum(cascade.values, cfg.z_grid, 2, 14);

  double worst = 0.0;
  for (std::size_t i = 0; i < cfg.z_grid.size(); ++i)
    worst = std::max(worst, std::abs(mf.alpha[i] - pf.alpha[i]));

  const double elapsed = timer.seconds();
  const bool pass = worst < 0.03 && elapsed < 30.0;
  report(3, "cascade spectrum matches dyadic partition sums", pass,
         "max |alpha - alpha_oracle| " + fmt(worst) + " (<0.03), " +
             fmt(elapsed) + " s (<30)");
}

// ---------------------------------------------------------------- 4
void criterion_surrogate_contracts() {
  Timer timer;
  // Heavy-tailed but uncorrelated input with entropic index 1.3.
  const mfsa::SuperstatSeries input =
      mfsa::superstat_series(1 << 16, {mfsa::gamma_from_q(1.3), 2.0, 202});
  const mfsa::RealSeries& x = input.values;

  // (a) shuffling preserves the value multiset exactly
  const mfsa::RealSeries shuffled = mfsa::shuffle(x, 203);
  std::vector<double> a = x.values, b = shuffled.values;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const bool multiset_ok = a == b;

  // (b) phase randomization preserves the periodogram
  const mfsa::RealSeries randomized = mfsa::phase_randomize(x, 204);
  const auto periodogram = [](const std::vector<double>& v) {
    std::vector<std::complex<double>> buf(v.begin(), v.end());
    mfsa::fft::forward(buf);
    std::vector<double> p(v.size() / 2 + 1);
    for (std::size_t f = 0; f < p.size(); ++f) p[f] = std::norm(buf[f]);
    return p;
  };
  const auto p_before = periodogram(x.values);
  const auto p_after = periodogram(randomized.values);
  double peak = 0.0;
  for (double p : p_before) peak = std::max(peak, p);
  double rel = 0.0;
  for (std::size_t f = 0; f < p_before.size(); ++f)
    rel = std::max(rel, std::abs(p_after[f] - p_before[f]) /
                            std::max(p_before[f], 1e-12 * peak));
  const bool spectrum_ok = rel < 1e-9;

  // (c) phase randomization Gaussianises the heavy-tailed marginal
  const double kurt_in = mfsa::excess_kurtosis(x.values);
  const double kurt_out = mfsa::excess_kurtosis(randomized.values);
  const bool kurtosis_ok = kurt_in > 1.0 && kurt_out < 0.2;

  // (d) destroying both structures yields the Gaussian-null tau curve
  const mfsa::RealSeries featureless = mfsa::make_surrogate(
      x, {mfsa::SurrogateKind::ShuffleThenPhaseRandomize, 205});
  const double dev = white_noise_tau_deviation(featureless);
  const bool tau_ok = dev < 0.1;

  const double elapsed = timer.seconds();
  const bool pass = multiset_ok && spectrum_ok && kurtosis_ok && tau_ok;
  report(4, "surrogate contracts", pass,
         std::string("multiset ") + (multiset_ok ? "exact" : "BROKEN") +
             ", periodogram rel dev " + fmt(rel) + " (<1e-9), kurtosis " +
             fmt(kurt_in) + " -> " + fmt(kurt_out) +
             " (<0.2), combined tau dev " + fmt(dev) + " (<0.1), " +
             fmt(elapsed) + " s");
}

// ---------------------------------------------------------------- 5
void criterion_decomposition_closure() {
  Timer timer;

  // Long-memory Gaussian noise: what little spectrum width a finite
  // realisation shows must be attributed to correlations, not to the
  // (exactly Gaussian) marginal. One shuffle's width is itself noise of
  // the same order as the signal, so the weight is taken against eight
  // independently seeded surrogates of a pinned realisation: the averaged
  // shuffled curve is what the decomposition compares against.
  std::vector<mfsa::RealSeries> lrd(8, mfsa::fgn(1 << 16, 0.8, 333));
  for (std::size_t k = 0; k < lrd.size(); ++k)
    lrd[k].label = "fgn08-" + std::to_string(k);
  const mfsa::MfdfaSuiteResult r_lrd =
      mfsa::run_mfdfa_suite(lrd, mfsa::MfdfaGridSpec{}, 334);
  bool weight_ok = false;
  double weight = 0.0;
  if (r_lrd.has_average) {
    weight = r_lrd.average_decomposition.weight_cor;
    weight_ok = weight > 0.5;
  }

  // Independent draws: shuffling is a no-op up to estimation noise.
  std::vector<mfsa::RealSeries> iid;
  iid.push_back(mfsa::superstat_series(1 << 16, {1.82, 2.0, 305}).values);
  iid[0].label = "superstat";
  const mfsa::MfdfaSuiteResult r_iid =
      mfsa::run_mfdfa_suite(iid, mfsa::MfdfaGridSpec{}, 306);
  bool shuffle_ok = false;
  double worst = 1e9;
  if (r_iid.per_input.size() == 1) {
    const mfsa::ScalingResult& orig =
        r_iid.per_input[0].variants[static_cast<int>(mfsa::Variant::Original)].scaling;
    const mfsa::ScalingResult& shuf =
        r_iid.per_input[0].variants[static_cast<int>(mfsa::Variant::Shuffled)].scaling;
    worst = 0.0;
    for (std::size_t i = 0; i < orig.z.size(); ++i)
      worst = std::max(worst, std::abs(orig.h[i] - shuf.h[i]));
    shuffle_ok = worst < 0.05;
  }

  const double elapsed = timer.seconds();
  report(5, "decomposition closure", weight_ok && shuffle_ok,
         "long-memory weight_cor " + fmt(weight) +
             " (>0.5), iid max |h - h_shuffled| " + fmt(worst) + " (<0.05), " +
             fmt(elapsed) + " s");
}

// ---------------------------------------------------------------- 6
void criterion_box_counting() {
  Timer timer;

  // exactness against the brute-force census
  mfsa::Rng rng(404);
  std::vector<mfsa::GridPoint> pts(10000);
  for (auto& p : pts) {
    p.x = static_cast<std::uint32_t>(rng.below(1u << 16));
    p.y = static_cast<std::uint32_t>(rng.below(1u << 16));
  }
  const mfsa::BoxCountCurve curve = mfsa::box_count(pts, 16);
  const auto expected = oracle::brute_force_box_counts(pts, 16);
  bool exact = curve.n_boxes.size() == expected.size();
  for (std::size_t i = 0; exact && i < expected.size(); ++i)
    exact = curve.n_boxes[i] == expected[i];

  const auto dim = [](const mfsa::PointSet2D& set) {
    const auto grid = mfsa::quantize_points(set, 16);
    return mfsa::fractal_dimension(mfsa::box_count(grid, 16), {2, 8}).d_f;
  };
  const double d_line = dim(oracle::line_points(100000, 405));
  const double d_square = dim(oracle::square_points(300000, 406));
  const double d_tri = dim(oracle::sierpinski_points(100000, 407));

  const double elapsed = timer.seconds();
  const bool pass = exact && std::abs(d_line - 1.0) < 0.05 &&
                    std::abs(d_square - 2.0) < 0.05 &&
                    std::abs(d_tri - 1.585) < 0.05 && elapsed < 10.0;
  report(6, "box counting: exactness and known dimensions", pass,
         std::string("counts ") + (exact ? "exact" : "BROKEN") + ", line " +
             fmt(d_line) + " (1±0.05), square " + fmt(d_square) +
             " (2±0.05), triangle " + fmt(d_tri) + " (1.585±0.05), " +
             fmt(elapsed) + " s (<10)");
}

// ---------------------------------------------------------------- 7
void criterion_quadrants() {
  Timer timer;
  const mfsa::RealSeries x = mfsa::gaussian_white(100000, 505);

  bool quads_ok = true;
  std::vector<double> dims;
  for (const int lag : {1, 2, 10, 50}) {
    const mfsa::PointSet2D points = mfsa::build_ldiagram(x, lag);
    const mfsa::QuadrantStats q = mfsa::quadrant_stats(points, x);
    for (const double p : {q.p1, q.p2, q.p3, q.p4})
      quads_ok = quads_ok && std::abs(p - 0.25) < 0.01;
    const auto grid = mfsa::quantize_points(points, 16);
    dims.push_back(
        mfsa::fractal_dimension(mfsa::box_count(grid, 16), {2, 8}).d_f);
  }
  const auto [dmin, dmax] = std::minmax_element(dims.begin(), dims.end());
  const double spread = *dmax - *dmin;

  const double elapsed = timer.seconds();
  const bool pass = quads_ok && spread <= 0.05;
  report(7, "independent-return lag portraits", pass,
         std::string("quadrants ") + (quads_ok ? "0.25±0.01" : "OFF") +
             ", dimension spread over lags " + fmt(spread) + " (<=0.05), " +
             fmt(elapsed) + " s");
}

// ---------------------------------------------------------------- 8
void criterion_superstat_closure() {
  Timer timer;
  const mfsa::SuperstatSeries s =
      mfsa::superstat_series(1 << 17, {1.82, 2.0, 606});
  const mfsa::EmpiricalPdf pdf =
      mfsa::empirical_pdf(s.values, 0, mfsa::Binning::Linear);
  const mfsa::FitReport fit = mfsa::fit_q_gaussian(pdf);
  const double q_hat = fit.params[0].value;
  const double gamma_hat = mfsa::gamma_from_q(q_hat);

  const double elapsed = timer.seconds();
  const bool pass =
      std::abs(q_hat - 1.30) < 0.05 && std::abs(gamma_hat - 1.82) < 0.3;
  report(8, "variance-mixture series refits its entropic index", pass,
         "q " + fmt(q_hat) + " (1.30±0.05), gamma " + fmt(gamma_hat) +
             " (1.82±0.3), " + fmt(elapsed) + " s");
}

// ---------------------------------------------------------------- 9
void criterion_volatility_recovery() {
  Timer timer;
  const double theta = 0.32, phi = 1.83, q = 1.08;
  std::vector<double> draws =
      oracle::sample_f_distribution(1 << 17, theta, phi, q, 707);
  mfsa::RealSeries v;
  v.values = std::move(draws);

  // The rising (v/theta)^phi flank lives at small v; linear bins starve it
  // of resolution and bias phi low by ~0.05, so the density is taken on a
  // log grid, which resolves both the flank and the power-law tail.
  const mfsa::EmpiricalPdf pdf = mfsa::empirical_pdf(v, 80, mfsa::Binning::Log);
  const mfsa::FitReport fit = mfsa::fit_f_distribution(pdf);
  const double theta_hat = fit.params[0].value;
  const double phi_hat = fit.params[1].value;
  const double q_hat = fit.params[2].value;

  const double elapsed = timer.seconds();
  const bool pass = std::abs(theta_hat - theta) < 0.05 &&
                    std::abs(phi_hat - phi) < 0.05 &&
                    std::abs(q_hat - q) < 0.05;
  report(9, "volatility density parameters round trip", pass,
         "theta " + fmt(theta_hat) + " (0.32±0.05), phi " + fmt(phi_hat) +
             " (1.83±0.05), q " + fmt(q_hat) + " (1.08±0.05), " +
             fmt(elapsed) + " s");
}

// ---------------------------------------------------------------- 10
std::map<std::string, std::string> tree_bytes(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root))
    if (entry.is_regular_file()) {
      std::ifstream in(entry.path(), std::ios::binary);
      out[fs::relative(entry.path(), root).generic_string()] = std::string(
          std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
  return out;
}

std::string drop_timestamp_line(const std::string& text) {
  std::istringstream in(text);
  std::string out, line;
  while (std::getline(in, line))
    if (line.find("\"timestamp\"") == std::string::npos) out += line + "\n";
  return out;
}

void criterion_reproducibility(const std::string& cli) {
  Timer timer;
  const fs::path work = fs::temp_directory_path() / "mfsa_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  // two small inputs on disk
  for (int i = 0; i < 2; ++i) {
    const mfsa::RealSeries x =
        mfsa::gaussian_white(2048, 900 + static_cast<std::uint64_t>(i));
    mfsa::io::write_text(work / ("in" + std::to_string(i) + ".txt"),
                         mfsa::io::series_to_column(x));
  }

  const std::string inputs = (work / "in0.txt").string() + " " +
                             (work / "in1.txt").string();
  const std::string grid =
      " --poly-order 2 --s-max 64 --s-count 6 --z-min -2 --z-max 2 "
      "--z-step 0.5 --bits 8 --ldiagram-fit-hi 6 --lags 1 --lags 2";
  const fs::path dir_a = work / "runA";
  const fs::path dir_b = work / "runB";

  const std::string first = "\"" + cli + "\" suite " + inputs + grid +
                            " --seed 42 --threads 1 --out " + dir_a.string() +
                            " > /dev/null 2>&1";
  const std::string second = "\"" + cli + "\" suite --manifest " +
                             (dir_a / "manifest.json").string() +
                             " --threads 4 --out " + dir_b.string() +
                             " > /dev/null 2>&1";
  const int rc1 = std::system(first.c_str());
  const int rc2 = std::system(second.c_str());

  bool pass = rc1 == 0 && rc2 == 0;
  std::string detail;
  if (!pass) {
    detail = "tool exit codes " + std::to_string(rc1) + "/" +
             std::to_string(rc2);
  } else {
    const auto tree_a = tree_bytes(dir_a);
    const auto tree_b = tree_bytes(dir_b);
    pass = !tree_a.empty() && tree_a.size() == tree_b.size();
    std::size_t mismatched = 0;
    for (const auto& [name, bytes] : tree_a) {
      const auto it = tree_b.find(name);
      if (it == tree_b.end()) {
        pass = false;
        ++mismatched;
        continue;
      }
      const bool same = name == "manifest.json"
                            ? drop_timestamp_line(bytes) ==
                                  drop_timestamp_line(it->second)
                            : bytes == it->second;
      if (!same) {
        pass = false;
        ++mismatched;
      }
    }
    detail = std::to_string(tree_a.size()) + " files, " +
             std::to_string(mismatched) + " mismatched across thread counts";
  }
  report(10, "manifest re-runs are byte-identical", pass,
         detail + ", " + fmt(timer.seconds()) + " s");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-cli-binary>\n", argv[0]);
    return 64;
  }

  criterion_gaussian_null();
  criterion_monofractal_recovery();
  criterion_cascade_oracle();
  criterion_surrogate_contracts();
  criterion_decomposition_closure();
  criterion_box_counting();
  criterion_quadrants();
  criterion_superstat_closure();
  criterion_volatility_recovery();
  criterion_reproducibility(argv[1]);

  std::printf("%s\n", g_failures == 0 ? "all criteria passed"
                                      : "some criteria FAILED");
  return g_failures;
}
