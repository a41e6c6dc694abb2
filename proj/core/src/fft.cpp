#include "mfsa/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "mfsa/error.hpp"

namespace mfsa::fft {
namespace {

// FFTW plan creation is not thread-safe; execution of a created plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void transform(std::vector<std::complex<double>>& data, int sign) {
  require(!data.empty(), Errc::EmptyInput, "FFT of empty vector");
  // std::complex<double> is layout-compatible with fftw_complex.
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    // FFTW_ESTIMATE keeps planning deterministic and leaves the buffer alone.
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign,
                            FFTW_ESTIMATE);
  }
  require(plan != nullptr, Errc::IoFailure, "FFTW plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace

void forward(std::vector<std::complex<double>>& data) {
  transform(data, FFTW_FORWARD);
}

void inverse(std::vector<std::complex<double>>& data) {
  transform(data, FFTW_BACKWARD);
}

}  // namespace mfsa::fft
