#pragma once

#include <string>
#include <vector>

#include "mfsa/series.hpp"

namespace mfsa {

enum class Binning { Linear, Log };

// Normalised histogram: sum(density * width) = 1. Empty bins are kept, so
// the grid is regular and fits see the full support.
struct EmpiricalPdf {
  std::vector<double> edges;    // bins + 1, strictly increasing
  std::vector<double> centers;  // bin midpoints
  std::vector<double> density;
  std::size_t n_samples = 0;
};

// bins == 0 picks a default: Freedman-Diaconis for linear binning, 50 for
// log binning (which needs strictly positive data).
EmpiricalPdf empirical_pdf(const RealSeries& series, std::size_t bins,
                           Binning binning);

enum class PdfFamily { FDistribution, QGaussian };

const char* pdf_family_name(PdfFamily family);

struct FitParam {
  std::string name;
  double value = 0.0;
  double std_error = 0.0;
};

struct FitReport {
  PdfFamily family = PdfFamily::QGaussian;
  std::vector<FitParam> params;  // fixed order per family, see the fitters
  double chi2_per_n = 0.0;       // weighted residual per fitted bin
  double r2 = 0.0;               // unweighted, in density space

  // The fitted curve; 0 outside a compact support.
  double evaluate(double x) const;
};

// Volatility density A * (v/theta)^phi * [1 - (1-q) v/theta]^{1/(1-q)},
// fitted on nonnegative data. Params: theta, phi, q, amplitude.
FitReport fit_f_distribution(const EmpiricalPdf& pdf);

// Symmetric heavy-tailed density A * [1 - (1-q) x^2/lambda]^{1/(1-q)};
// q -> 1 recovers a Gaussian with variance lambda/2. Params: q, lambda,
// amplitude.
FitReport fit_q_gaussian(const EmpiricalPdf& pdf);

}  // namespace mfsa
