#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <fftw3.h>

namespace simcred::detail {

// Real-to-complex DFT of a fixed length, backed by an FFTW plan. Output bin k
// is sum_n x[n] exp(-2 pi i k n / N) for k = 0 .. N/2.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t bins() const { return n_ / 2 + 1; }

  std::span<const std::complex<double>> transform(std::span<const double> input);

 private:
  std::size_t n_;
  double* in_;
  fftw_complex* out_;
  fftw_plan plan_;
};

}  // namespace simcred::detail
