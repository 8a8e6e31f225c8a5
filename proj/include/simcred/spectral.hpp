#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "simcred/core_index.hpp"
#include "simcred/time_series.hpp"

namespace simcred {

// Input/output pair from one sweep test, uniformly sampled on a shared
// abscissa.
struct SweepRecord {
  TimeSeries input;
  TimeSeries output;
  double sample_rate = 0.0;  // Hz

  // Throws DomainError unless both series share the same abscissa and it is
  // uniform to 1 part in 1e6.
  static SweepRecord make(TimeSeries input, TimeSeries output);
};

// Averaged auto/cross spectra. Frequencies are in rad/s and exclude DC; the
// spectra are one-sided densities per Hz.
struct SpectralEstimate {
  std::vector<double> freqs;
  std::vector<double> g_xx;
  std::vector<double> g_yy;
  std::vector<std::complex<double>> g_xy;  // conj(X) * Y, so g_xy / g_xx = Y / X
  std::size_t n_segments = 0;
  std::size_t segment_len = 0;
};

// Bode data on a frequency grid: magnitude in dB, unwrapped phase in degrees,
// coherence in (0, 1].
struct FrequencyResponse {
  std::vector<double> freqs;  // rad/s, strictly increasing, positive
  std::vector<double> magnitude_db;
  std::vector<double> phase_deg;
  std::vector<double> coherence;

  std::size_t size() const { return freqs.size(); }
  friend bool operator==(const FrequencyResponse&, const FrequencyResponse&) = default;
};

// Throws DomainError on length mismatch, non-increasing or non-positive
// frequencies, non-finite entries or coherence outside (0, 1 + 1e-9].
void validate(const FrequencyResponse& fr);

struct Band {
  double lo = 0.0;  // rad/s
  double hi = 0.0;
};

// Segment length that yields `target_segments` segments for the given record
// length and overlap.
std::size_t default_segment_len(std::size_t record_len, double overlap_fraction,
                                std::size_t target_segments = 16);

// Welch-style estimate: segments are mean-detrended, Hann-tapered,
// transformed, and their periodograms averaged. Throws EstimationError when
// fewer than two segments fit, DomainError on bad parameters.
SpectralEstimate estimate_spectra(const SweepRecord& rec, std::size_t segment_len,
                                  double overlap_fraction = 0.5);

struct CoherenceResult {
  std::vector<double> values;  // meaningful only where valid
  std::vector<bool> valid;     // false where an auto-spectrum or the cross-spectrum vanishes
};

// |G_xy|^2 / (G_xx * G_yy), clamped into (0, 1].
CoherenceResult coherence(const SpectralEstimate& est);

// H = G_xy / G_xx at every valid point; invalid points are dropped.
FrequencyResponse frequency_response(const SpectralEstimate& est);

// Removes 360-degree jumps between adjacent samples.
std::vector<double> unwrap_degrees(std::vector<double> phase);

struct CoherenceCheck {
  bool passed = false;
  std::size_t points_checked = 0;
  std::vector<double> violating_freqs;
};

// Passes iff coherence >= eps_co at every grid point inside the band. Throws
// DomainError if the band is inverted, leaves the grid span, or holds no grid
// point.
CoherenceCheck check_coherence_criterion(const FrequencyResponse& fr, Band band,
                                         const CredibilityConfig& config);

// (1 - exp(-eta_co)) / (1 - exp(-1)); throws DomainError outside (0, 1].
double coherence_weight(double eta_co);

// Log-spaced points from band.lo to band.hi inclusive, points_per_decade per
// decade (at least two points in total).
std::vector<double> log_grid(Band band, double points_per_decade);

// Both responses on a common log grid, with the errors derived from them.
struct BodeComparison {
  std::vector<double> grid;
  std::vector<double> mag_exp;
  std::vector<double> mag_sim;
  std::vector<double> phase_exp;
  std::vector<double> phase_sim;   // after the 360-degree alignment shift
  std::vector<double> coherence_exp;
  std::vector<double> weights;     // all ones when weighting is off
  double phase_shift_deg = 0.0;    // multiple of 360 added to the simulated phase
  double e_mag = 0.0;              // dB
  double e_pha = 0.0;              // degrees
};

// Resamples both responses (linear in log-frequency) onto log_grid(band) and
// forms the coherence-weighted RMS magnitude and phase errors. Weights come
// from the experimental coherence. Throws DomainError if the band is not
// covered by both grids.
BodeComparison bode_errors(const FrequencyResponse& fr_exp, const FrequencyResponse& fr_sim,
                           Band band, bool use_weighting, double points_per_decade = 50.0);

struct BodeThresholds {
  double eps_mag = 0.0;  // dB
  double eps_pha = 0.0;  // degrees
};

// k_p times the range of the experimental magnitude and phase over the band
// grid. Throws DegenerateError if either curve is flat.
BodeThresholds bode_thresholds(const BodeComparison& cmp, const CredibilityConfig& config);
BodeThresholds bode_thresholds(const FrequencyResponse& fr_exp, Band band,
                               const CredibilityConfig& config, double points_per_decade = 50.0);

struct FrequencyIndices {
  double eta_mag = 0.0;
  double eta_pha = 0.0;
  double eta_f = 0.0;  // sqrt((eta_mag^2 + eta_pha^2) / 2)
};

FrequencyIndices frequency_index(double e_mag, double eps_mag, double e_pha, double eps_pha,
                                 const CredibilityConfig& config);

}  // namespace simcred
