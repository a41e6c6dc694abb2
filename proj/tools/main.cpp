// Command-line front end: one subcommand per analysis stage, shared
// --out/--format/--seed/--threads knobs, and a `suite` driver that runs the
// whole four-variant comparison over many inputs and records a manifest
// that reproduces every output byte for byte.

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mfsa/density.hpp"
#include "mfsa/error.hpp"
#include "mfsa/io.hpp"
#include "mfsa/ldiagram.hpp"
#include "mfsa/mfdfa.hpp"
#include "mfsa/preprocess.hpp"
#include "mfsa/rng.hpp"
#include "mfsa/suite.hpp"
#include "mfsa/surrogate.hpp"
#include "mfsa/synth.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;

struct Options {
  std::string out = ".";
  std::string format = "csv";  // series-style outputs: csv or json
  std::uint64_t seed = 1;
  int threads = 1;
  bool out_given = false;
};

fs::path out_base(const Options& g, const std::string& input_path,
                  const std::string& suffix) {
  fs::create_directories(g.out);
  return fs::path(g.out) / (fs::path(input_path).stem().string() + suffix);
}

int run_preprocess(const Options& g, const std::string& input) {
  const auto prices = mfsa::io::read_price_csv(input);
  mfsa::RealSeries returns = mfsa::log_returns(prices);
  const mfsa::IntradayProfile profile = mfsa::intraday_profile(returns);
  mfsa::RealSeries flat = mfsa::deseasonalize(returns, profile);
  mfsa::RealSeries ready = mfsa::standardize(flat);
  ready.label = fs::path(input).stem().string();

  const fs::path series_path = out_base(g, input, "_returns.txt");
  const fs::path profile_path = out_base(g, input, "_profile.csv");
  mfsa::io::write_text(series_path, mfsa::io::series_to_column(ready));
  mfsa::io::write_text(profile_path, mfsa::io::profile_to_csv(profile));

  std::cout << "preprocessed " << ready.size() << " returns ("
            << prices.size() << " prices, " << profile.minute.size()
            << " profile minutes)\n"
            << "  " << series_path.string() << "\n"
            << "  " << profile_path.string() << "\n";
  return kExitOk;
}

void add_grid_flags(CLI::App* cmd, mfsa::MfdfaGridSpec& grid) {
  cmd->add_option("--poly-order", grid.poly_order,
                  "detrending polynomial degree")
      ->capture_default_str();
  cmd->add_option("--profile-order", grid.profile_order,
                  "how many cumulative sums build the profile (1 or 2)")
      ->capture_default_str();
  cmd->add_flag("--two-pass", grid.two_pass,
                "tile segments from both ends of the series");
  cmd->add_option("--s-min", grid.s_min, "smallest window")->capture_default_str();
  cmd->add_option("--s-max", grid.s_max, "largest window (0: length/4, capped)")
      ->capture_default_str();
  cmd->add_option("--s-count", grid.s_count, "number of window sizes")
      ->capture_default_str();
  cmd->add_option("--z-min", grid.z_min, "smallest moment order")->capture_default_str();
  cmd->add_option("--z-max", grid.z_max, "largest moment order")->capture_default_str();
  cmd->add_option("--z-step", grid.z_step, "moment order step")->capture_default_str();
  cmd->add_option("--fit-lo", grid.fit_lo, "regression window lower bound (0: derived)")
      ->capture_default_str();
  cmd->add_option("--fit-hi", grid.fit_hi, "regression window upper bound (0: derived)")
      ->capture_default_str();
}

int run_mfdfa(const Options& g, const std::string& input,
              const mfsa::MfdfaGridSpec& grid) {
  const mfsa::RealSeries series = mfsa::io::read_series(input);
  const mfsa::MfdfaConfig cfg = grid.resolve(series.size());

  const mfsa::RealSeries profile = mfsa::build_profile(series, cfg.profile_order);
  const mfsa::FluctuationTable table =
      mfsa::fluctuation_table(profile, cfg, g.threads);
  const mfsa::ScalingResult scaling = mfsa::scaling_exponents(table, cfg);
  const mfsa::MultifractalSpectrum spectrum = mfsa::legendre_spectrum(scaling);

  if (table.floored_segments > 0)
    std::cerr << "warning: " << table.floored_segments
              << " zero-residual segments were floored; moments at negative "
                 "z lean on them\n";

  mfsa::io::write_text(out_base(g, input, "_fluctuations.csv"),
                       mfsa::io::fluctuation_to_csv(table));
  mfsa::io::write_text(out_base(g, input, "_scaling.csv"),
                       mfsa::io::scaling_to_csv(scaling));
  mfsa::io::write_text(out_base(g, input, "_scaling.json"),
                       mfsa::io::scaling_to_json(scaling));
  mfsa::io::write_text(out_base(g, input, "_spectrum.csv"),
                       mfsa::io::spectrum_to_csv(spectrum));
  mfsa::io::write_text(out_base(g, input, "_spectrum.json"),
                       mfsa::io::spectrum_to_json(spectrum));

  std::cout << "n=" << series.size() << " windows=" << cfg.s_grid.size()
            << " hurst=" << spectrum.hurst << " delta_h=" << spectrum.delta_h
            << " delta_alpha=" << spectrum.delta_alpha << "\n";
  if (!spectrum.alpha_monotonic)
    std::cout << "note: alpha(z) is not monotonic; treat the spectrum width "
                 "with care\n";
  return kExitOk;
}

int run_surrogate(const Options& g, const std::string& input,
                  const std::string& kind_name) {
  mfsa::SurrogateKind kind;
  if (kind_name == "shuffle")
    kind = mfsa::SurrogateKind::Shuffle;
  else if (kind_name == "phaserand")
    kind = mfsa::SurrogateKind::PhaseRandomize;
  else
    kind = mfsa::SurrogateKind::ShuffleThenPhaseRandomize;

  const mfsa::RealSeries series = mfsa::io::read_series(input);
  const mfsa::SurrogateSpec spec{kind, g.seed};
  const mfsa::RealSeries result = mfsa::make_surrogate(series, spec);

  const std::string tag = "_surrogate_" + kind_name;
  if (g.format == "json") {
    const fs::path path = out_base(g, input, tag + ".json");
    mfsa::io::write_text(path, mfsa::io::surrogate_to_json(result, spec));
    std::cout << path.string() << "\n";
  } else {
    const fs::path data = out_base(g, input, tag + ".csv");
    const fs::path meta = out_base(g, input, tag + ".meta.json");
    mfsa::io::write_text(data, mfsa::io::series_to_csv(result));
    mfsa::io::write_text(meta, mfsa::io::surrogate_to_json({.label = result.label},
                                                           spec));
    std::cout << data.string() << "\n" << meta.string() << "\n";
  }
  return kExitOk;
}

int run_ldiagram(const Options& g, const std::string& input,
                 std::vector<int> lags, int bits, int fit_lo, int fit_hi) {
  if (lags.empty()) lags.push_back(1);
  const mfsa::RealSeries series = mfsa::io::read_series(input);

  std::string quadrants =
      "label,lag,p1,p2,p3,p4,n_pos_minus_neg,sum_returns,n_axis\n";
  nlohmann::json summary = nlohmann::json::array();
  for (int lag : lags) {
    const mfsa::PointSet2D points = mfsa::build_ldiagram(series, lag);
    const mfsa::QuadrantStats q = mfsa::quadrant_stats(points, series);
    const auto grid = mfsa::quantize_points(points, bits);
    const mfsa::BoxCountCurve curve = mfsa::fractal_dimension(
        mfsa::box_count(grid, bits), {fit_lo, fit_hi});

    quadrants += series.label + ',' + std::to_string(lag) + ',' +
                 mfsa::io::format_double(q.p1) + ',' +
                 mfsa::io::format_double(q.p2) + ',' +
                 mfsa::io::format_double(q.p3) + ',' +
                 mfsa::io::format_double(q.p4) + ',' +
                 std::to_string(q.n_pos_minus_neg) + ',' +
                 mfsa::io::format_double(q.sum_returns) + ',' +
                 std::to_string(q.n_axis) + '\n';
    mfsa::io::write_text(
        out_base(g, input, "_boxcount_lag" + std::to_string(lag) + ".csv"),
        mfsa::io::boxcount_to_csv(curve));

    summary.push_back({{"lag", lag},
                       {"d_f", curve.d_f},
                       {"stderr", curve.stderr_d},
                       {"r2", curve.r2},
                       {"saturated", curve.saturated},
                       {"p1", q.p1},
                       {"p2", q.p2},
                       {"p3", q.p3},
                       {"p4", q.p4},
                       {"n_axis", q.n_axis},
                       {"n_pos_minus_neg", q.n_pos_minus_neg},
                       {"sum_returns", q.sum_returns}});
    std::cout << "lag " << lag << ": d_f=" << curve.d_f
              << " quadrants=" << q.p1 << "/" << q.p2 << "/" << q.p3 << "/"
              << q.p4 << "\n";
  }
  mfsa::io::write_text(out_base(g, input, "_quadrants.csv"), quadrants);
  mfsa::io::write_text(out_base(g, input, "_ldiagram.json"),
                       summary.dump(2) + "\n");
  return kExitOk;
}

int run_boxdim(const Options& g, const std::string& input, int bits,
               int fit_lo, int fit_hi) {
  const mfsa::PointSet2D points = mfsa::io::read_xy_csv(input);
  const auto grid = mfsa::quantize_points(points, bits);
  const mfsa::BoxCountCurve curve =
      mfsa::fractal_dimension(mfsa::box_count(grid, bits), {fit_lo, fit_hi});

  mfsa::io::write_text(out_base(g, input, "_boxcount.csv"),
                       mfsa::io::boxcount_to_csv(curve));
  mfsa::io::write_text(out_base(g, input, "_boxdim.json"),
                       mfsa::io::boxdim_to_json(curve));
  std::cout << "d_f=" << curve.d_f << " stderr=" << curve.stderr_d
            << " r2=" << curve.r2 << (curve.saturated ? " (saturated)" : "")
            << "\n";
  return kExitOk;
}

int run_synth(const Options& g, const std::string& kind, std::size_t n,
              double hurst, double p, int levels, double gamma, double delta,
              bool sigma_out, std::string output) {
  mfsa::RealSeries series;
  mfsa::RealSeries sigma;
  if (kind == "white") {
    series = mfsa::gaussian_white(n, g.seed);
  } else if (kind == "fgn") {
    series = mfsa::fgn(n, hurst, g.seed);
  } else if (kind == "cascade") {
    series = mfsa::binomial_cascade({p, levels});
  } else {  // superstat
    mfsa::SuperstatSeries pair =
        mfsa::superstat_series(n, {gamma, delta, g.seed});
    series = std::move(pair.values);
    sigma = std::move(pair.sigma);
  }

  fs::create_directories(g.out);
  if (output.empty()) output = kind + ".txt";
  const fs::path path = fs::path(g.out) / output;
  mfsa::io::write_text(path, mfsa::io::series_to_column(series));
  std::cout << path.string() << " (" << series.size() << " values)\n";

  if (sigma_out) {
    mfsa::require(!sigma.values.empty(), mfsa::Errc::InvalidSpec,
                  "--sigma-out only applies to --kind superstat");
    const fs::path spath =
        fs::path(g.out) / (fs::path(output).stem().string() + "_sigma.txt");
    mfsa::io::write_text(spath, mfsa::io::series_to_column(sigma));
    std::cout << spath.string() << "\n";
  }
  return kExitOk;
}

int run_fitpdf(const Options& g, const std::string& input,
               const std::string& family, std::size_t bins,
               const std::string& binning) {
  const mfsa::RealSeries series = mfsa::io::read_series(input);
  const mfsa::Binning mode =
      binning == "log" ? mfsa::Binning::Log : mfsa::Binning::Linear;
  const mfsa::EmpiricalPdf pdf = mfsa::empirical_pdf(series, bins, mode);
  const mfsa::FitReport fit = family == "fdist" ? mfsa::fit_f_distribution(pdf)
                                                : mfsa::fit_q_gaussian(pdf);

  mfsa::io::write_text(out_base(g, input, "_pdf.csv"), mfsa::io::pdf_to_csv(pdf));
  mfsa::io::write_text(out_base(g, input, "_fit.json"),
                       mfsa::io::fit_report_to_json(fit));
  mfsa::io::write_text(out_base(g, input, "_fitcurve.csv"),
                       mfsa::io::fit_curve_to_csv(pdf, fit));

  std::cout << mfsa::pdf_family_name(fit.family) << ":";
  for (const mfsa::FitParam& param : fit.params)
    std::cout << " " << param.name << "=" << param.value;
  std::cout << " chi2/n=" << fit.chi2_per_n << " r2=" << fit.r2 << "\n";
  return kExitOk;
}

int run_suite_cmd(const Options& g, std::vector<std::string> inputs,
                  const std::string& manifest_path,
                  const mfsa::MfdfaGridSpec& grid,
                  const mfsa::LdiagramSpec& lspec) {
  mfsa::RunManifest manifest;
  if (!manifest_path.empty()) {
    manifest = mfsa::io::read_manifest(manifest_path);
  } else {
    manifest.command = "suite";
    manifest.tool_version = MFSA_VERSION;
    manifest.rng_algorithm = mfsa::Rng::kAlgorithm;
    manifest.base_seed = g.seed;
    manifest.inputs = std::move(inputs);
    manifest.mfdfa = grid;
    manifest.ldiagram = lspec;
  }
  manifest.timestamp = mfsa::io::now_iso8601();

  mfsa::SuiteOutcome outcome;
  std::vector<mfsa::RealSeries> series;
  for (const std::string& path : manifest.inputs) {
    try {
      series.push_back(mfsa::io::read_series(path));
    } catch (const std::exception& e) {
      outcome.load_failures.push_back({path, e.what()});
    }
  }

  const fs::path dir = g.out_given ? fs::path(g.out) : fs::path("suite_run");
  if (series.empty()) {
    for (const auto& f : outcome.load_failures)
      std::cerr << "error: " << f.label << ": " << f.message << "\n";
    return kExitFailure;
  }

  const mfsa::SuiteOutcome run = mfsa::run_suite(series, manifest, g.threads);
  outcome.mfdfa = run.mfdfa;
  outcome.ldiagram = run.ldiagram;
  mfsa::io::write_suite_outputs(dir, manifest, outcome);

  const std::size_t failures = outcome.load_failures.size() +
                               outcome.mfdfa.failures.size() +
                               outcome.ldiagram.failures.size();
  std::cout << "suite: " << outcome.mfdfa.per_input.size() << "/"
            << manifest.inputs.size() << " inputs analysed, results in "
            << dir.string() << "\n";
  if (outcome.mfdfa.has_average) {
    const mfsa::Decomposition& d = outcome.mfdfa.average_decomposition;
    std::cout << "  average weights: distribution " << d.weight_pdf
              << ", correlation " << d.weight_cor << "\n";
  }
  for (const auto& f : outcome.load_failures)
    std::cerr << "warning: load " << f.label << ": " << f.message << "\n";
  for (const auto& f : outcome.mfdfa.failures)
    std::cerr << "warning: mfdfa " << f.label << ": " << f.message << "\n";
  for (const auto& f : outcome.ldiagram.failures)
    std::cerr << "warning: ldiagram " << f.label << ": " << f.message << "\n";

  if (outcome.mfdfa.per_input.empty() && outcome.ldiagram.per_input.empty())
    return kExitFailure;
  return failures == 0 ? kExitOk : kExitPartial;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multifractal scaling analysis of one-dimensional series"};
  app.set_version_flag("--version", MFSA_VERSION);
  app.require_subcommand(1);

  Options g;
  auto* out_opt =
      app.add_option("--out", g.out, "output directory")->capture_default_str();
  app.add_option("--format", g.format, "series output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0: all cores)")
      ->check(CLI::Range(0, 1024))
      ->capture_default_str();

  std::string input;
  std::string surrogate_kind = "shuffle";
  mfsa::MfdfaGridSpec grid;
  std::vector<int> lags;
  int bits = 16;
  int fit_lo = 2;
  int fit_hi = 8;
  std::string synth_kind;
  std::size_t synth_n = 65536;
  double synth_hurst = 0.7;
  double synth_p = 0.3;
  int synth_levels = 16;
  double synth_gamma = 1.82;
  double synth_delta = 2.0;
  bool synth_sigma_out = false;
  std::string synth_output;
  std::string fit_family = "qgauss";
  std::size_t fit_bins = 0;
  std::string fit_binning = "lin";
  std::vector<std::string> suite_inputs;
  std::string manifest_path;
  mfsa::LdiagramSpec lspec;

  auto* cmd_pre = app.add_subcommand(
      "preprocess", "day,minute,price file -> deseasonalized unit returns");
  cmd_pre->fallthrough();
  cmd_pre->add_option("--input", input, "price CSV")->required();

  auto* cmd_mfdfa = app.add_subcommand(
      "mfdfa", "scaling exponents and singularity spectrum of a series");
  cmd_mfdfa->fallthrough();
  cmd_mfdfa->add_option("--input", input, "series file")->required();
  add_grid_flags(cmd_mfdfa, grid);

  auto* cmd_surr = app.add_subcommand("surrogate",
                                      "shuffled / phase-randomized copies");
  cmd_surr->fallthrough();
  cmd_surr->add_option("--input", input, "series file")->required();
  cmd_surr->add_option("--surrogate", surrogate_kind, "surrogate kind")
      ->check(CLI::IsMember({"shuffle", "phaserand", "both"}))
      ->capture_default_str();

  auto* cmd_ldia = app.add_subcommand(
      "ldiagram", "lag portrait: quadrant occupation and box dimension");
  cmd_ldia->fallthrough();
  cmd_ldia->add_option("--input", input, "series file")->required();
  cmd_ldia->add_option("--lag", lags, "lag(s) between the paired samples");
  cmd_ldia->add_option("--bits", bits, "quantisation bits per axis")
      ->check(CLI::Range(4, 31))
      ->capture_default_str();
  cmd_ldia->add_option("--fit-lo", fit_lo, "coarsest resolution in the fit")
      ->capture_default_str();
  cmd_ldia->add_option("--fit-hi", fit_hi, "finest resolution in the fit")
      ->capture_default_str();

  auto* cmd_box = app.add_subcommand("boxdim",
                                     "box-counting dimension of an x,y file");
  cmd_box->fallthrough();
  cmd_box->add_option("--input", input, "points CSV")->required();
  cmd_box->add_option("--bits", bits, "quantisation bits per axis")
      ->check(CLI::Range(4, 31))
      ->capture_default_str();
  cmd_box->add_option("--fit-lo", fit_lo, "coarsest resolution in the fit")
      ->capture_default_str();
  cmd_box->add_option("--fit-hi", fit_hi, "finest resolution in the fit")
      ->capture_default_str();

  auto* cmd_synth = app.add_subcommand("synth", "reference series generators");
  cmd_synth->fallthrough();
  cmd_synth->add_option("--kind", synth_kind, "white | fgn | cascade | superstat")
      ->check(CLI::IsMember({"white", "fgn", "cascade", "superstat"}))
      ->required();
  cmd_synth->add_option("--n", synth_n, "series length")->capture_default_str();
  cmd_synth->add_option("--hurst", synth_hurst, "fgn: Hurst exponent")
      ->capture_default_str();
  cmd_synth->add_option("--p", synth_p, "cascade: left mass fraction")
      ->capture_default_str();
  cmd_synth->add_option("--levels", synth_levels, "cascade: splitting depth")
      ->capture_default_str();
  cmd_synth->add_option("--gamma", synth_gamma, "superstat: variance exponent")
      ->capture_default_str();
  cmd_synth->add_option("--delta", synth_delta, "superstat: variance scale")
      ->capture_default_str();
  cmd_synth->add_flag("--sigma-out", synth_sigma_out,
                      "superstat: also write the volatility series");
  cmd_synth->add_option("--output", synth_output, "output file name");

  auto* cmd_fit = app.add_subcommand("fitpdf",
                                     "histogram a series and fit a density");
  cmd_fit->fallthrough();
  cmd_fit->add_option("--input", input, "series file")->required();
  cmd_fit->add_option("--family", fit_family, "fdist | qgauss")
      ->check(CLI::IsMember({"fdist", "qgauss"}))
      ->capture_default_str();
  cmd_fit->add_option("--bins", fit_bins, "bin count (0: automatic)")
      ->capture_default_str();
  cmd_fit->add_option("--binning", fit_binning, "lin | log")
      ->check(CLI::IsMember({"lin", "log"}))
      ->capture_default_str();

  auto* cmd_suite = app.add_subcommand(
      "suite", "four-variant scaling + lag analysis over many inputs");
  cmd_suite->fallthrough();
  cmd_suite->add_option("inputs", suite_inputs, "series files");
  cmd_suite->add_option("--manifest", manifest_path,
                        "re-run a recorded manifest instead");
  add_grid_flags(cmd_suite, grid);
  cmd_suite->add_option("--lags", lspec.lags, "lag list for the portraits")
      ->capture_default_str();
  cmd_suite->add_option("--bits", lspec.bits_per_axis,
                        "quantisation bits per axis")
      ->check(CLI::Range(4, 31))
      ->capture_default_str();
  cmd_suite->add_option("--ldiagram-fit-lo", lspec.fit_lo,
                        "coarsest resolution in the dimension fit")
      ->capture_default_str();
  cmd_suite->add_option("--ldiagram-fit-hi", lspec.fit_hi,
                        "finest resolution in the dimension fit")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  g.out_given = out_opt->count() > 0;

  try {
    if (*cmd_pre) return run_preprocess(g, input);
    if (*cmd_mfdfa) return run_mfdfa(g, input, grid);
    if (*cmd_surr) return run_surrogate(g, input, surrogate_kind);
    if (*cmd_ldia) return run_ldiagram(g, input, lags, bits, fit_lo, fit_hi);
    if (*cmd_box) return run_boxdim(g, input, bits, fit_lo, fit_hi);
    if (*cmd_synth)
      return run_synth(g, synth_kind, synth_n, synth_hurst, synth_p,
                       synth_levels, synth_gamma, synth_delta, synth_sigma_out,
                       synth_output);
    if (*cmd_fit) return run_fitpdf(g, input, fit_family, fit_bins, fit_binning);
    if (*cmd_suite) {
      if (!manifest_path.empty() && !suite_inputs.empty()) {
        std::cerr << "error: --manifest replaces the input list\n";
        return kExitUsage;
      }
      if (manifest_path.empty() && suite_inputs.empty()) {
        std::cerr << "error: suite needs input files or --manifest\n";
        return kExitUsage;
      }
      return run_suite_cmd(g, suite_inputs, manifest_path, grid, lspec);
    }
  } catch (const mfsa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
