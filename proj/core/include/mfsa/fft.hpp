#pragma once

#include <complex>
#include <vector>

namespace mfsa::fft {

// In-place unnormalised complex DFT, forward sign convention e^{-i...}.
void forward(std::vector<std::complex<double>>& data);

// In-place unnormalised inverse DFT; divide by size() to undo forward().
void inverse(std::vector<std::complex<double>>& data);

}  // namespace mfsa::fft
