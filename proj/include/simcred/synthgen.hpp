#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "simcred/spectral.hpp"
#include "simcred/time_series.hpp"

namespace simcred {

// k * wn^2 / (s^2 + 2 zeta wn s + wn^2)
struct SecondOrderPlant {
  double natural_freq = 1.0;  // rad/s
  double damping = 0.5;
  double gain = 1.0;

  void validate() const;
};

struct Vibration {
  double amplitude = 0.0;
  double freq = 0.0;  // rad/s
};

struct NoiseSpec {
  double stddev = 0.0;
  std::uint64_t seed = 0;
  std::optional<Vibration> vibration;
};

// Logarithmic chirp x(t) = A sin(phi(t)) whose instantaneous frequency
// phi'(t) = f_start * (f_end / f_start)^(t / duration) rises from f_start to
// f_end over the duration.
class LogSweep {
 public:
  // Throws DomainError unless 0 < f_start < f_end < pi * sample_rate and the
  // duration, amplitude and sample rate are positive.
  LogSweep(double f_start, double f_end, double duration, double sample_rate, double amplitude);

  double phase(double t) const;
  double instantaneous_frequency(double t) const;
  double value(double t) const;

  // Samples t = i / sample_rate for i = 0 .. round(duration * sample_rate).
  TimeSeries sample() const;

 private:
  double f_start_;
  double f_end_;
  double duration_;
  double sample_rate_;
  double amplitude_;
  double log_ratio_;
};

TimeSeries log_sweep(double f_start, double f_end, double duration, double sample_rate,
                     double amplitude);

// Response of the plant from rest, integrated with classical RK4 at the
// input's own step; the input is linearly interpolated at half steps.
// Throws DomainError for a non-uniform abscissa.
TimeSeries simulate_response(const SecondOrderPlant& plant, const TimeSeries& input);

// Exact magnitude (dB) and unwrapped phase (degrees); coherence is one.
FrequencyResponse analytic_bode(const SecondOrderPlant& plant, std::span<const double> freqs);

// series + Gaussian noise + optional sinusoidal vibration. Reproducible per
// seed (see GaussianSource).
TimeSeries corrupt(const TimeSeries& series, const NoiseSpec& spec);

// Noise standard deviation that puts additive white noise `snr_db` below the
// RMS of `series`.
double noise_stddev_for_snr(const TimeSeries& series, double snr_db);

// Standard normal deviates: 64-bit Mersenne Twister (std::mt19937_64) words
// mapped to uniforms in (0, 1) as ((w >> 11) + 0.5) * 2^-53, paired through
// the Box-Muller transform (cosine branch first, then sine branch).
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed);
  double next();

 private:
  double uniform();
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace simcred
