#include "simcred/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fft.hpp"
#include "simcred/errors.hpp"

namespace simcred {

namespace {

constexpr double kCoherenceTol = 1e-9;

double log_interp(const std::vector<double>& freqs, const std::vector<double>& values, double f) {
  auto it = std::upper_bound(freqs.begin(), freqs.end(), f);
  if (it == freqs.end()) return values.back();
  if (it == freqs.begin()) return values.front();
  const auto hi = static_cast<std::size_t>(it - freqs.begin());
  const std::size_t lo = hi - 1;
  const double frac = (std::log(f) - std::log(freqs[lo])) / (std::log(freqs[hi]) - std::log(freqs[lo]));
  return values[lo] + frac * (values[hi] - values[lo]);
}

void require_band(Band band) {
  if (!(band.lo > 0.0) || !(band.hi > band.lo) || !std::isfinite(band.hi)) {
    throw DomainError("frequency band must satisfy 0 < lo < hi");
  }
}

void require_covers(const FrequencyResponse& fr, Band band, const char* which) {
  if (fr.size() < 2 || band.lo < fr.freqs.front() || band.hi > fr.freqs.back()) {
    throw DomainError(std::string("band [") + std::to_string(band.lo) + ", " +
                      std::to_string(band.hi) + "] rad/s lies outside the " + which +
                      " response grid");
  }
}

double range_of(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

}  // namespace

SweepRecord SweepRecord::make(TimeSeries input, TimeSeries output) {
  const auto ta = input.abscissa();
  const auto tb = output.abscissa();
  if (!std::equal(ta.begin(), ta.end(), tb.begin(), tb.end())) {
    throw DomainError("sweep record: input and output must share one abscissa");
  }
  if (!input.is_uniform(1e-6)) {
    throw DomainError("sweep record: abscissa must be uniformly spaced");
  }
  const double rate = 1.0 / input.mean_step();
  return SweepRecord{std::move(input), std::move(output), rate};
}

void validate(const FrequencyResponse& fr) {
  const std::size_t n = fr.freqs.size();
  if (fr.magnitude_db.size() != n || fr.phase_deg.size() != n || fr.coherence.size() != n) {
    throw DomainError("frequency response: vectors differ in length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(fr.freqs[i]) || !std::isfinite(fr.magnitude_db[i]) ||
        !std::isfinite(fr.phase_deg[i]) || !std::isfinite(fr.coherence[i])) {
      throw DomainError("frequency response: non-finite entry at index " + std::to_string(i));
    }
    if (!(fr.freqs[i] > 0.0) || (i > 0 && !(fr.freqs[i] > fr.freqs[i - 1]))) {
      throw DomainError("frequency response: frequencies must be positive and strictly increasing");
    }
    if (!(fr.coherence[i] > 0.0) || fr.coherence[i] > 1.0 + kCoherenceTol) {
      throw DomainError("frequency response: coherence outside (0, 1] at index " + std::to_string(i));
    }
  }
}

std::size_t default_segment_len(std::size_t record_len, double overlap_fraction,
                                std::size_t target_segments) {
  if (target_segments < 2) target_segments = 2;
  // n_seg = (N - L) / (L (1 - o)) + 1  =>  L = N / (1 + (n_seg - 1)(1 - o))
  const double denom = 1.0 + static_cast<double>(target_segments - 1) * (1.0 - overlap_fraction);
  return static_cast<std::size_t>(std::floor(static_cast<double>(record_len) / denom));
}

SpectralEstimate estimate_spectra(const SweepRecord& rec, std::size_t segment_len,
                                  double overlap_fraction) {
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) {
    throw DomainError("estimate_spectra: overlap fraction must lie in [0, 1)");
  }
  const auto x = rec.input.values();
  const auto y = rec.output.values();
  const std::size_t n = x.size();
  if (segment_len < 4 || segment_len > n) {
    throw DomainError("estimate_spectra: segment length must lie in [4, record length]");
  }
  const auto step = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(static_cast<double>(segment_len) * (1.0 - overlap_fraction))));
  const std::size_t n_segments = (n - segment_len) / step + 1;
  if (n_segments < 2) {
    throw EstimationError("estimate_spectra: only " + std::to_string(n_segments) +
                          " segment fits; coherence needs at least two");
  }

  // periodic Hann window
  std::vector<double> window(segment_len);
  double window_power = 0.0;
  for (std::size_t i = 0; i < segment_len; ++i) {
    window[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(segment_len)));
    window_power += window[i] * window[i];
  }

  detail::RealFft fft(segment_len);
  const std::size_t bins = fft.bins();
  std::vector<double> sxx(bins, 0.0), syy(bins, 0.0);
  std::vector<std::complex<double>> sxy(bins, 0.0);
  std::vector<std::complex<double>> xf(bins);
  std::vector<double> buf(segment_len);

  auto taper = [&](std::span<const double> seg) {
    double mean = 0.0;
    for (double v : seg) mean += v;
    mean /= static_cast<double>(seg.size());
    for (std::size_t i = 0; i < seg.size(); ++i) buf[i] = (seg[i] - mean) * window[i];
  };

  for (std::size_t s = 0; s < n_segments; ++s) {
    const std::size_t start = s * step;
    taper(x.subspan(start, segment_len));
    const auto xs = fft.transform(buf);
    std::copy(xs.begin(), xs.end(), xf.begin());
    taper(y.subspan(start, segment_len));
    const auto ys = fft.transform(buf);
    for (std::size_t k = 0; k < bins; ++k) {
      sxx[k] += std::norm(xf[k]);
      syy[k] += std::norm(ys[k]);
      sxy[k] += std::conj(xf[k]) * ys[k];
    }
  }

  SpectralEstimate est;
  est.n_segments = n_segments;
  est.segment_len = segment_len;
  const double base = 1.0 / (rec.sample_rate * window_power * static_cast<double>(n_segments));
  const bool even = segment_len % 2 == 0;
  for (std::size_t k = 1; k < bins; ++k) {
    const double scale = (even && k == bins - 1) ? base : 2.0 * base;
    est.freqs.push_back(2.0 * std::numbers::pi * static_cast<double>(k) * rec.sample_rate /
                        static_cast<double>(segment_len));
    est.g_xx.push_back(scale * sxx[k]);
    est.g_yy.push_back(scale * syy[k]);
    est.g_xy.push_back(scale * sxy[k]);
  }
  return est;
}

CoherenceResult coherence(const SpectralEstimate& est) {
  CoherenceResult out;
  out.values.resize(est.freqs.size(), 0.0);
  out.valid.resize(est.freqs.size(), false);
  for (std::size_t i = 0; i < est.freqs.size(); ++i) {
    const double denom = est.g_xx[i] * est.g_yy[i];
    const double num = std::norm(est.g_xy[i]);
    if (!(est.g_xx[i] > 0.0) || !(est.g_yy[i] > 0.0) || !(num > 0.0) || !std::isfinite(denom)) {
      continue;
    }
    double c = num / denom;
    if (c > 1.0 + kCoherenceTol) {
      throw EstimationError("coherence exceeds one at " + std::to_string(est.freqs[i]) +
                            " rad/s; spectra are inconsistent");
    }
    c = std::clamp(c, std::numeric_limits<double>::min(), 1.0);
    out.values[i] = c;
    out.valid[i] = true;
  }
  return out;
}

std::vector<double> unwrap_degrees(std::vector<double> phase) {
  double offset = 0.0;
  for (std::size_t i = 1; i < phase.size(); ++i) {
    const double raw_prev = phase[i - 1] - offset;
    double jump = phase[i] - raw_prev;
    offset += -360.0 * std::round(jump / 360.0);
    phase[i] += offset;
  }
  return phase;
}

FrequencyResponse frequency_response(const SpectralEstimate& est) {
  const CoherenceResult coh = coherence(est);
  FrequencyResponse fr;
  std::vector<double> raw_phase;
  for (std::size_t i = 0; i < est.freqs.size(); ++i) {
    if (!coh.valid[i]) continue;
    const std::complex<double> h = est.g_xy[i] / est.g_xx[i];
    fr.freqs.push_back(est.freqs[i]);
    fr.magnitude_db.push_back(20.0 * std::log10(std::abs(h)));
    raw_phase.push_back(std::arg(h) * 180.0 / std::numbers::pi);
    fr.coherence.push_back(coh.values[i]);
  }
  fr.phase_deg = unwrap_degrees(std::move(raw_phase));
  return fr;
}

CoherenceCheck check_coherence_criterion(const FrequencyResponse& fr, Band band,
                                         const CredibilityConfig& config) {
  require_band(band);
  require_covers(fr, band, "tested");
  CoherenceCheck check;
  for (std::size_t i = 0; i < fr.size(); ++i) {
    if (fr.freqs[i] < band.lo || fr.freqs[i] > band.hi) continue;
    ++check.points_checked;
    if (fr.coherence[i] < config.eps_co()) check.violating_freqs.push_back(fr.freqs[i]);
  }
  if (check.points_checked == 0) {
    throw DomainError("coherence criterion: no grid point inside the band");
  }
  check.passed = check.violating_freqs.empty();
  return check;
}

double coherence_weight(double eta_co) {
  if (!(eta_co > 0.0) || eta_co > 1.0 + kCoherenceTol) {
    throw DomainError("coherence weight: coherence must lie in (0, 1], got " + std::to_string(eta_co));
  }
  return -std::expm1(-std::min(eta_co, 1.0)) / -std::expm1(-1.0);
}

std::vector<double> log_grid(Band band, double points_per_decade) {
  require_band(band);
  if (!(points_per_decade > 0.0)) throw DomainError("log grid: points per decade must be positive");
  const double decades = std::log10(band.hi / band.lo);
  const auto n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(decades * points_per_decade)) + 1);
  std::vector<double> grid(n);
  const double llo = std::log(band.lo);
  const double lhi = std::log(band.hi);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  grid.front() = band.lo;
  grid.back() = band.hi;
  return grid;
}

BodeComparison bode_errors(const FrequencyResponse& fr_exp, const FrequencyResponse& fr_sim,
                           Band band, bool use_weighting, double points_per_decade) {
  validate(fr_exp);
  validate(fr_sim);
  require_band(band);
  require_covers(fr_exp, band, "experimental");
  require_covers(fr_sim, band, "simulated");

  BodeComparison cmp;
  cmp.grid = log_grid(band, points_per_decade);
  const std::size_t n = cmp.grid.size();
  for (double f : cmp.grid) {
    cmp.mag_exp.push_back(log_interp(fr_exp.freqs, fr_exp.magnitude_db, f));
    cmp.mag_sim.push_back(log_interp(fr_sim.freqs, fr_sim.magnitude_db, f));
    cmp.phase_exp.push_back(log_interp(fr_exp.freqs, fr_exp.phase_deg, f));
    cmp.phase_sim.push_back(log_interp(fr_sim.freqs, fr_sim.phase_deg, f));
    cmp.coherence_exp.push_back(log_interp(fr_exp.freqs, fr_exp.coherence, f));
  }

  double mean_offset = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean_offset += cmp.phase_exp[i] - cmp.phase_sim[i];
  mean_offset /= static_cast<double>(n);
  cmp.phase_shift_deg = 360.0 * std::round(mean_offset / 360.0);
  for (double& p : cmp.phase_sim) p += cmp.phase_shift_deg;

  double acc_mag = 0.0;
  double acc_pha = 0.0;
  cmp.weights.resize(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (use_weighting) cmp.weights[i] = coherence_weight(cmp.coherence_exp[i]);
    const double w2 = cmp.weights[i] * cmp.weights[i];
    const double dm = cmp.mag_exp[i] - cmp.mag_sim[i];
    const double dp = cmp.phase_exp[i] - cmp.phase_sim[i];
    acc_mag += w2 * dm * dm;
    acc_pha += w2 * dp * dp;
  }
  cmp.e_mag = std::sqrt(acc_mag / static_cast<double>(n));
  cmp.e_pha = std::sqrt(acc_pha / static_cast<double>(n));
  return cmp;
}

BodeThresholds bode_thresholds(const BodeComparison& cmp, const CredibilityConfig& config) {
  const double mag_range = range_of(cmp.mag_exp);
  const double pha_range = range_of(cmp.phase_exp);
  if (!(mag_range > 0.0)) throw DegenerateError("Bode threshold: experimental magnitude is flat over the band");
  if (!(pha_range > 0.0)) throw DegenerateError("Bode threshold: experimental phase is flat over the band");
  return {config.k_p() * mag_range, config.k_p() * pha_range};
}

BodeThresholds bode_thresholds(const FrequencyResponse& fr_exp, Band band,
                               const CredibilityConfig& config, double points_per_decade) {
  return bode_thresholds(bode_errors(fr_exp, fr_exp, band, false, points_per_decade), config);
}

FrequencyIndices frequency_index(double e_mag, double eps_mag, double e_pha, double eps_pha,
                                 const CredibilityConfig& config) {
  FrequencyIndices out;
  out.eta_mag = normalize(e_mag, eps_mag, config);
  out.eta_pha = normalize(e_pha, eps_pha, config);
  out.eta_f = std::sqrt(0.5 * (out.eta_mag * out.eta_mag + out.eta_pha * out.eta_pha));
  return out;
}

}  // namespace simcred
