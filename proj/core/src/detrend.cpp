#include "mfsa/detrend.hpp"

#include <cmath>
#include <string>

#include "mfsa/error.hpp"

namespace mfsa {

DetrendBasis::DetrendBasis(std::size_t length, int degree)
    : length_(length), degree_(degree) {
  require(degree >= 0, Errc::InvalidConfig, "negative polynomial degree");
  require(length >= static_cast<std::size_t>(degree) + 1, Errc::SingularFit,
          "window of " + std::to_string(length) +
              " samples cannot fit a degree-" + std::to_string(degree) +
              " polynomial");

  const std::size_t cols = static_cast<std::size_t>(degree) + 1;
  basis_.assign(cols * length, 0.0);

  // Vandermonde columns on x in [-1, 1]; the rescaling keeps powers of the
  // sample index from overflowing the dynamic range at large windows.
  std::vector<double> x(length);
  for (std::size_t i = 0; i < length; ++i)
    x[i] = length > 1
               ? -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(length - 1)
               : 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    double* col = basis_.data() + j * length;
    for (std::size_t i = 0; i < length; ++i)
      col[i] = j == 0 ? 1.0 : col[i - length] * x[i];
  }

  // Modified Gram-Schmidt with a second orthogonalisation pass; plain MGS
  // loses orthogonality noticeably by degree 5 on short windows.
  for (std::size_t j = 0; j < cols; ++j) {
    double* vj = basis_.data() + j * length;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        const double* vk = basis_.data() + k * length;
        double dot = 0.0;
        for (std::size_t i = 0; i < length; ++i) dot += vj[i] * vk[i];
        for (std::size_t i = 0; i < length; ++i) vj[i] -= dot * vk[i];
      }
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i < length; ++i) norm2 += vj[i] * vj[i];
    require(norm2 > 0.0, Errc::SingularFit, "degenerate polynomial basis");
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < length; ++i) vj[i] *= inv;
  }
}

double DetrendBasis::mean_square_residual(std::span<const double> window,
                                          std::span<double> scratch) const {
  require(window.size() == length_, Errc::LengthMismatch,
          "window length does not match basis");
  require(scratch.size() >= length_, Errc::LengthMismatch,
          "scratch shorter than window");

  double* r = scratch.data();
  for (std::size_t i = 0; i < length_; ++i) r[i] = window[i];

  const std::size_t cols = static_cast<std::size_t>(degree_) + 1;
  for (std::size_t j = 0; j < cols; ++j) {
    const double* vj = basis_.data() + j * length_;
    double c = 0.0;
    for (std::size_t i = 0; i < length_; ++i) c += r[i] * vj[i];
    for (std::size_t i = 0; i < length_; ++i) r[i] -= c * vj[i];
  }

  double acc = 0.0;
  for (std::size_t i = 0; i < length_; ++i) acc += r[i] * r[i];
  return acc / static_cast<double>(length_);
}

}  // namespace mfsa
