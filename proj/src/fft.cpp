#include "fft.hpp"

#include <algorithm>
#include <mutex>
#include <new>
#include <stdexcept>

namespace simcred::detail {

namespace {
// FFTW planning and plan destruction are not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("RealFft: zero length");
  std::lock_guard lock(planner_mutex());
  in_ = fftw_alloc_real(n);
  out_ = fftw_alloc_complex(n / 2 + 1);
  if (in_ == nullptr || out_ == nullptr) {
    fftw_free(in_);
    fftw_free(out_);
    throw std::bad_alloc();
  }
  // FFTW_ESTIMATE keeps plans (and therefore results) reproducible run to run.
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan_);
  fftw_free(in_);
  fftw_free(out_);
}

std::span<const std::complex<double>> RealFft::transform(std::span<const double> input) {
  if (input.size() != n_) throw std::invalid_argument("RealFft: input length mismatch");
  std::copy(input.begin(), input.end(), in_);
  fftw_execute(plan_);
  // fftw_complex is layout-compatible with std::complex<double>
  return {reinterpret_cast<const std::complex<double>*>(out_), bins()};
}

}  // namespace simcred::detail
