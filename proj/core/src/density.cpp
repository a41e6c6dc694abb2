#include "mfsa/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "mfsa/error.hpp"
#include "mfsa/simplex.hpp"

namespace mfsa {
namespace {

// Deformed exponential: [1 + (1-q) u]^{1/(1-q)}, plain exp as q -> 1,
// zero once the bracket goes non-positive (compact support for q < 1).
double tsallis_exp(double u, double q) {
  if (std::fabs(q - 1.0) < 1e-7) return std::exp(u);
  const double base = 1.0 + (1.0 - q) * u;
  if (base <= 0.0) return 0.0;
  return std::pow(base, 1.0 / (1.0 - q));
}

double q_gaussian_value(double x, double q, double lambda, double amplitude) {
  return amplitude * tsallis_exp(-x * x / lambda, q);
}

double f_distribution_value(double v, double theta, double phi, double q,
                            double amplitude) {
  if (v < 0.0) return 0.0;
  if (v == 0.0) return phi > 0.0 ? 0.0 : (phi == 0.0 ? amplitude : std::numeric_limits<double>::infinity());
  return amplitude * std::pow(v / theta, phi) * tsallis_exp(-v / theta, q);
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;
  double kurtosis = 3.0;
  double max_density = 0.0;
};

Moments pdf_moments(const EmpiricalPdf& pdf) {
  Moments mom;
  double mass = 0.0;
  for (std::size_t i = 0; i < pdf.centers.size(); ++i) {
    const double w = pdf.edges[i + 1] - pdf.edges[i];
    mass += pdf.density[i] * w;
    mom.mean += pdf.centers[i] * pdf.density[i] * w;
    mom.max_density = std::max(mom.max_density, pdf.density[i]);
  }
  if (mass > 0.0) mom.mean /= mass;
  double m2 = 0.0, m4 = 0.0;
  for (std::size_t i = 0; i < pdf.centers.size(); ++i) {
    const double w = pdf.edges[i + 1] - pdf.edges[i];
    const double d = pdf.centers[i] - mom.mean;
    m2 += d * d * pdf.density[i] * w;
    m4 += d * d * d * d * pdf.density[i] * w;
  }
  if (mass > 0.0) {
    m2 /= mass;
    m4 /= mass;
  }
  mom.var = m2;
  if (m2 > 0.0) mom.kurtosis = m4 / (m2 * m2);
  return mom;
}

// Weighted-least-squares machinery shared by both families. The model is a
// callable (center, params) -> density.
struct FitProblem {
  std::vector<double> centers;
  std::vector<double> density;
  std::vector<double> weight;

  template <typename Model>
  double chi2(std::span<const double> p, const Model& model) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const double m = model(centers[i], p);
      if (!std::isfinite(m)) return std::numeric_limits<double>::infinity();
      const double r = m - density[i];
      acc += weight[i] * r * r;
    }
    return acc;
  }

  template <typename Model>
  double r_squared(std::span<const double> p, const Model& model) const {
    double dbar = 0.0;
    for (double d : density) dbar += d;
    dbar /= static_cast<double>(density.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const double r = model(centers[i], p) - density[i];
      ss_res += r * r;
      ss_tot += (density[i] - dbar) * (density[i] - dbar);
    }
    return ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  }

  // Gauss-Newton standard errors at the optimum: central-difference
  // Jacobian, weighted normal matrix, residual variance with n-p dof.
  template <typename Model>
  std::vector<double> std_errors(std::span<const double> p, double chi2_value,
                                 const Model& model) const {
    const std::size_t np = p.size();
    const std::size_t n = centers.size();
    std::vector<double> errors(np, 0.0);
    if (n <= np) return errors;

    std::vector<double> jac(n * np);
    std::vector<double> lo(p.begin(), p.end()), hi(p.begin(), p.end());
    for (std::size_t j = 0; j < np; ++j) {
      const double h = std::max(1e-6 * std::fabs(p[j]), 1e-9);
      lo[j] = p[j] - h;
      hi[j] = p[j] + h;
      for (std::size_t i = 0; i < n; ++i)
        jac[i * np + j] =
            (model(centers[i], hi) - model(centers[i], lo)) / (2.0 * h);
      lo[j] = p[j];
      hi[j] = p[j];
    }

    // normal matrix with an identity tail for Gauss-Jordan inversion
    std::vector<double> a(np * 2 * np, 0.0);
    for (std::size_t r = 0; r < np; ++r) {
      for (std::size_t c = 0; c < np; ++c) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          acc += weight[i] * jac[i * np + r] * jac[i * np + c];
        a[r * 2 * np + c] = acc;
      }
      a[r * 2 * np + np + r] = 1.0;
    }
    for (std::size_t col = 0; col < np; ++col) {
      std::size_t pivot = col;
      for (std::size_t r = col + 1; r < np; ++r)
        if (std::fabs(a[r * 2 * np + col]) > std::fabs(a[pivot * 2 * np + col]))
          pivot = r;
      if (std::fabs(a[pivot * 2 * np + col]) < 1e-300) return errors;  // singular
      if (pivot != col)
        for (std::size_t c = 0; c < 2 * np; ++c)
          std::swap(a[pivot * 2 * np + c], a[col * 2 * np + c]);
      const double inv = 1.0 / a[col * 2 * np + col];
      for (std::size_t c = 0; c < 2 * np; ++c) a[col * 2 * np + c] *= inv;
      for (std::size_t r = 0; r < np; ++r) {
        if (r == col) continue;
        const double f = a[r * 2 * np + col];
        if (f == 0.0) continue;
        for (std::size_t c = 0; c < 2 * np; ++c)
          a[r * 2 * np + c] -= f * a[col * 2 * np + c];
      }
    }

    const double s2 = chi2_value / static_cast<double>(n - np);
    for (std::size_t j = 0; j < np; ++j) {
      const double v = a[j * 2 * np + np + j] * s2;
      errors[j] = v > 0.0 ? std::sqrt(v) : 0.0;
    }
    return errors;
  }
};

// Runs the simplex from every start and keeps the best converged result;
// ties resolve to the earliest start, so the whole fit is deterministic.
template <typename Objective>
SimplexResult best_of_starts(const Objective& objective,
                             const std::vector<std::vector<double>>& starts,
                             const std::vector<double>& steps) {
  SimplexResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& start : starts) {
    const SimplexResult r = nelder_mead(objective, start, steps);
    if (r.value < best.value) best = r;
  }
  return best;
}

}  // namespace

const char* pdf_family_name(PdfFamily family) {
  switch (family) {
    case PdfFamily::FDistribution: return "f-distribution";
    case PdfFamily::QGaussian: return "q-gaussian";
  }
  return "unknown";
}

double FitReport::evaluate(double x) const {
  if (family == PdfFamily::QGaussian)
    return q_gaussian_value(x, params[0].value, params[1].value, params[2].value);
  return f_distribution_value(x, params[0].value, params[1].value,
                              params[2].value, params[3].value);
}

EmpiricalPdf empirical_pdf(const RealSeries& series, std::size_t bins,
                           Binning binning) {
  require(!series.values.empty(), Errc::EmptyInput, "empty series");
  require(bins == 0 || bins >= 4, Errc::InvalidConfig,
          "need at least 4 bins (or 0 for automatic)");

  const auto [min_it, max_it] =
      std::minmax_element(series.values.begin(), series.values.end());
  const double lo = *min_it, hi = *max_it;
  require(hi > lo, Errc::DegenerateRange, "all values equal");
  if (binning == Binning::Log)
    require(lo > 0.0, Errc::NonPositiveForLog,
            "log binning needs strictly positive values");

  const std::size_t n = series.values.size();
  if (bins == 0) {
    if (binning == Binning::Log) {
      bins = 50;
    } else {
      // Freedman-Diaconis, with a Sturges fallback for degenerate IQR
      std::vector<double> sorted(series.values);
      std::sort(sorted.begin(), sorted.end());
      const auto quantile = [&](double f) {
        const double pos = f * static_cast<double>(n - 1);
        const std::size_t i = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(i);
        return i + 1 < n ? sorted[i] * (1.0 - frac) + sorted[i + 1] * frac
                         : sorted[i];
      };
      const double iqr = quantile(0.75) - quantile(0.25);
      if (iqr > 0.0) {
        const double width = 2.0 * iqr / std::cbrt(static_cast<double>(n));
        bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
      } else {
        bins = static_cast<std::size_t>(1.0 + std::log2(static_cast<double>(n)));
      }
      bins = std::clamp<std::size_t>(bins, 4, 4096);
    }
  }

  EmpiricalPdf pdf;
  pdf.n_samples = n;
  pdf.edges.resize(bins + 1);
  const double log_lo = binning == Binning::Log ? std::log(lo) : 0.0;
  const double log_hi = binning == Binning::Log ? std::log(hi) : 0.0;
  for (std::size_t i = 0; i <= bins; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(bins);
    pdf.edges[i] = binning == Binning::Linear
                       ? lo + (hi - lo) * f
                       : std::exp(log_lo + (log_hi - log_lo) * f);
  }
  pdf.edges.front() = lo;
  pdf.edges.back() = hi;

  std::vector<std::size_t> counts(bins, 0);
  const double span = binning == Binning::Linear ? hi - lo : log_hi - log_lo;
  for (double v : series.values) {
    const double t = binning == Binning::Linear ? v - lo : std::log(v) - log_lo;
    auto idx = static_cast<std::size_t>(
        std::clamp(std::floor(t / span * static_cast<double>(bins)), 0.0,
                   static_cast<double>(bins - 1)));
    // rounding can land a value one bin off its edges; nudge if needed
    while (idx > 0 && v < pdf.edges[idx]) --idx;
    while (idx + 1 < bins && v >= pdf.edges[idx + 1]) ++idx;
    ++counts[idx];
  }

  pdf.centers.resize(bins);
  pdf.density.resize(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    const double width = pdf.edges[i + 1] - pdf.edges[i];
    pdf.centers[i] = 0.5 * (pdf.edges[i] + pdf.edges[i + 1]);
    pdf.density[i] =
        static_cast<double>(counts[i]) / (static_cast<double>(n) * width);
  }
  return pdf;
}

FitReport fit_q_gaussian(const EmpiricalPdf& pdf) {
  std::size_t nonempty = 0;
  for (double d : pdf.density)
    if (d > 0.0) ++nonempty;
  require(nonempty >= 8, Errc::InsufficientBins,
          "need at least 8 nonempty bins");

  const Moments mom = pdf_moments(pdf);
  require(mom.max_density > 0.0 && mom.var > 0.0, Errc::ConvergenceFailure,
          "degenerate density");

  // Every bin participates; the weight floor for an (almost) empty bin is
  // the density one sample would contribute there. Anything lower lets the
  // far tail's zero bins outvote the peak and drag q down.
  FitProblem prob;
  for (std::size_t i = 0; i < pdf.centers.size(); ++i) {
    const double width = pdf.edges[i + 1] - pdf.edges[i];
    const double one_sample =
        pdf.n_samples > 0
            ? 1.0 / (static_cast<double>(pdf.n_samples) * width)
            : 1e-6 * mom.max_density;
    prob.centers.push_back(pdf.centers[i]);
    prob.density.push_back(pdf.density[i]);
    prob.weight.push_back(1.0 / std::max(pdf.density[i], one_sample));
  }

  // parameters in the optimiser: (q, ln lambda, ln amplitude)
  const auto model = [](double x, std::span<const double> p) {
    return q_gaussian_value(x, p[0], std::exp(p[1]), std::exp(p[2]));
  };
  const auto objective = [&](std::span<const double> p) {
    if (p[0] >= 2.99 || p[0] <= -5.0) return 1e300;
    return prob.chi2(p, model);
  };

  // moment guess: a q-Gaussian is a rescaled Student-t with
  // nu = (3-q)/(q-1) degrees of freedom, so kurtosis pins q
  double q0 = 1.0;
  if (mom.kurtosis > 3.05) {
    const double nu = 4.0 + 6.0 / (mom.kurtosis - 3.0);
    q0 = (nu + 3.0) / (nu + 1.0);
  }
  q0 = std::clamp(q0, 1.0, 1.6);
  const double lambda0 = std::max(mom.var * (5.0 - 3.0 * q0), 1e-12);
  const double log_a0 = std::log(mom.max_density);

  const std::vector<std::vector<double>> starts = {
      {q0, std::log(lambda0), log_a0},
      {1.01, std::log(std::max(2.0 * mom.var, 1e-12)), log_a0},
      {1.30, std::log(std::max(mom.var, 1e-12)), log_a0},
      {1.60, std::log(std::max(0.5 * mom.var, 1e-12)), log_a0},
  };
  const std::vector<double> steps = {0.05, 0.2, 0.2};

  const SimplexResult best = best_of_starts(objective, starts, steps);
  require(std::isfinite(best.value), Errc::ConvergenceFailure,
          "no start point produced a finite fit");

  const std::vector<double> opt = {best.x[0], std::exp(best.x[1]),
                                   std::exp(best.x[2])};
  const auto natural_model = [](double x, std::span<const double> p) {
    return q_gaussian_value(x, p[0], p[1], p[2]);
  };
  const std::vector<double> errors =
      prob.std_errors(opt, best.value, natural_model);

  FitReport report;
  report.family = PdfFamily::QGaussian;
  report.params = {{"q", opt[0], errors[0]},
                   {"lambda", opt[1], errors[1]},
                   {"amplitude", opt[2], errors[2]}};
  report.chi2_per_n = best.value / static_cast<double>(prob.centers.size());
  report.r2 = prob.r_squared(opt, natural_model);
  return report;
}

FitReport fit_f_distribution(const EmpiricalPdf& pdf) {
  require(pdf.edges.front() >= 0.0, Errc::DomainError,
          "volatility fit needs nonnegative data");

  // only occupied bins enter this fit; their inverse density is the weight
  FitProblem prob;
  for (std::size_t i = 0; i < pdf.centers.size(); ++i) {
    if (pdf.density[i] <= 0.0) continue;
    prob.centers.push_back(pdf.centers[i]);
    prob.density.push_back(pdf.density[i]);
    prob.weight.push_back(1.0 / pdf.density[i]);
  }
  require(prob.centers.size() >= 8, Errc::InsufficientBins,
          "need at least 8 nonempty bins");

  const Moments mom = pdf_moments(pdf);
  require(mom.max_density > 0.0 && mom.var > 0.0, Errc::ConvergenceFailure,
          "degenerate density");

  // parameters in the optimiser: (ln theta, phi, q, ln amplitude)
  const auto model = [](double v, std::span<const double> p) {
    return f_distribution_value(v, std::exp(p[0]), p[1], p[2], std::exp(p[3]));
  };
  const auto objective = [&](std::span<const double> p) {
    if (p[1] <= -0.99 || p[2] >= 2.99 || p[2] <= -5.0) return 1e300;
    return prob.chi2(p, model);
  };

  // moment guess from the Gamma limit q -> 1: mean = (phi+1) theta,
  // var = (phi+1) theta^2
  const double theta0 = std::max(mom.var / std::max(mom.mean, 1e-12), 1e-9);
  const double phi0 = std::max(mom.mean / theta0 - 1.0, 0.1);
  const double peak0 = f_distribution_value(
      std::max(phi0 * theta0, 1e-12), theta0, phi0, 1.0, 1.0);
  const double log_a0 =
      std::log(peak0 > 0.0 ? mom.max_density / peak0 : mom.max_density);

  const std::vector<std::vector<double>> starts = {
      {std::log(theta0), phi0, 1.02, log_a0},
      {std::log(theta0), phi0, 1.10, log_a0},
      {std::log(theta0 * 1.5), phi0 * 0.7, 1.05, log_a0},
      {std::log(theta0 * 0.7), std::max(phi0 * 1.5, 0.2), 1.01, log_a0},
  };
  const std::vector<double> steps = {0.2, 0.2, 0.05, 0.2};

  const SimplexResult best = best_of_starts(objective, starts, steps);
  require(std::isfinite(best.value), Errc::ConvergenceFailure,
          "no start point produced a finite fit");

  const std::vector<double> opt = {std::exp(best.x[0]), best.x[1], best.x[2],
                                   std::exp(best.x[3])};
  const auto natural_model = [](double v, std::span<const double> p) {
    return f_distribution_value(v, p[0], p[1], p[2], p[3]);
  };
  const std::vector<double> errors =
      prob.std_errors(opt, best.value, natural_model);

  FitReport report;
  report.family = PdfFamily::FDistribution;
  report.params = {{"theta", opt[0], errors[0]},
                   {"phi", opt[1], errors[1]},
                   {"q", opt[2], errors[2]},
                   {"amplitude", opt[3], errors[3]}};
  report.chi2_per_n = best.value / static_cast<double>(prob.centers.size());
  report.r2 = prob.r_squared(opt, natural_model);
  return report;
}

}  // namespace mfsa
