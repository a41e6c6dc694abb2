#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mfsa {

// Orthonormal polynomial basis on the sample points of a fixed-size window.
// Built once per window length and reused for every segment of that length,
// so the per-segment cost of removing a degree-m trend is O(length * (m+1)).
//
// The residual is computed by explicitly subtracting each projection from a
// working copy of the window. That is slower than the norm identity
// ||r||^2 = ||y||^2 - sum c_j^2 but immune to the catastrophic cancellation
// the identity suffers on near-polynomial segments.
class DetrendBasis {
 public:
  DetrendBasis(std::size_t length, int degree);

  std::size_t length() const noexcept { return length_; }
  int degree() const noexcept { return degree_; }

  // Mean squared residual after removing the least-squares polynomial.
  // `scratch` must have at least length() elements.
  double mean_square_residual(std::span<const double> window,
                              std::span<double> scratch) const;

 private:
  std::size_t length_;
  int degree_;
  std::vector<double> basis_;  // (degree+1) rows of length_ samples each
};

}  // namespace mfsa
