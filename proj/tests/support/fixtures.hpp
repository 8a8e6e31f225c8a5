#pragma once

// Test-only fixtures and independent oracles. Nothing here calls the
// implementation path that it is used to check.

#include <complex>
#include <span>
#include <vector>

#include "simcred/performance.hpp"
#include "simcred/spectral.hpp"
#include "simcred/synthgen.hpp"
#include "simcred/time_series.hpp"

namespace fixtures {

// Sensor-noise standard deviations reproducing the four rows of the sensor
// table: thresholds are 10% of the experimental value.
std::vector<simcred::PerformanceSample> sensor_table_samples();

// The level-flight curve: rises from 0 to 0.35 (range 0.35) with RMS 0.231.
simcred::TimeSeries level_flight_curve(std::size_t n = 2001);

// exp + amplitude * (-1)^i, so the RMS difference is exactly `amplitude`.
simcred::TimeSeries alternating_offset(const simcred::TimeSeries& exp, double amplitude);

// Bode pair on the 50-per-decade log grid of [0.25, 40] rad/s: experimental
// magnitude falls 41 dB and phase 272 degrees linearly in log-frequency; the
// simulated curves differ by +-0.364 dB and +-2.27 degrees alternately.
struct BodePair {
  simcred::FrequencyResponse exp;
  simcred::FrequencyResponse sim;
};
BodePair pitch_bode_pair(double coherence = 1.0);

// Record of a second-order plant driven by a log sweep, with output noise at
// the given SNR.
simcred::SweepRecord plant_sweep_record(const simcred::SecondOrderPlant& plant, double f_start,
                                        double f_end, double duration, double rate, double snr_db,
                                        std::uint64_t seed);

namespace oracle {

// Textbook normalization in long double, straight from its definition.
long double normalize(long double e, long double eps, long double eta_pass);

// max_{i,j} |v_i - v_j| by brute force.
double pairwise_max_diff(std::span<const double> v);

// Direct O(N^2) DFT of one real segment, bins 0..N/2.
std::vector<std::complex<double>> naive_dft(std::span<const double> x);

// Welch estimate built from naive_dft; same conventions as the library
// (periodic Hann, mean detrend, one-sided density per Hz, DC dropped).
simcred::SpectralEstimate naive_welch(std::span<const double> x, std::span<const double> y,
                                      double rate, std::size_t seg, std::size_t step);

}  // namespace oracle

}  // namespace fixtures
