#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fixtures {

using simcred::FrequencyResponse;
using simcred::PerformanceSample;
using simcred::TimeSeries;

std::vector<PerformanceSample> sensor_table_samples() {
  // (sigma_e, error) per row; sigma_s = sigma_e - error
  const double rows[4][2] = {{6e-3, 2e-4}, {4e-2, 7e-4}, {4e-5, 1.4e-6}, {7e-4, 1.4e-5}};
  const char* names[4] = {"accel_rest", "accel_spin", "gyro_rest", "gyro_spin"};
  std::vector<PerformanceSample> out;
  for (int i = 0; i < 4; ++i) {
    PerformanceSample s;
    s.name = names[i];
    s.unit = i < 2 ? "m/s^2" : "rad/s";
    s.p_exp = rows[i][0];
    s.p_sim = rows[i][0] - rows[i][1];
    s.k_p_override = 0.1;
    out.push_back(s);
  }
  return out;
}

TimeSeries level_flight_curve(std::size_t n) {
  const double range = 0.35;
  const double target_rms = 0.231;
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = 20.0 * static_cast<double>(i) / static_cast<double>(n - 1);

  // y = range * (t/T)^p; pick p by bisection so the discrete RMS hits the target
  auto rms_for = [&](double p) {
    double acc = 0.0;
    for (double ti : t) {
      const double y = range * std::pow(ti / 20.0, p);
      acc += y * y;
    }
    return std::sqrt(acc / static_cast<double>(n));
  };
  double lo = 0.05;
  double hi = 5.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (rms_for(mid) > target_rms ? lo : hi) = mid;
  }
  const double p = 0.5 * (lo + hi);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = range * std::pow(t[i] / 20.0, p);
  return TimeSeries(t, y, "velocity", "s", "m/s");
}

TimeSeries alternating_offset(const TimeSeries& exp, double amplitude) {
  std::vector<double> y(exp.values().begin(), exp.values().end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += (i % 2 == 0 ? amplitude : -amplitude);
  return exp.with_values(std::move(y));
}

BodePair pitch_bode_pair(double coherence) {
  const auto grid = simcred::log_grid({0.25, 40.0}, 50.0);
  const double l0 = std::log(grid.front());
  const double l1 = std::log(grid.back());
  BodePair out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double u = (std::log(grid[i]) - l0) / (l1 - l0);
    const double mag = 5.0 - 41.0 * u;
    const double pha = -272.0 * u;
    const double sign = i % 2 == 0 ? 1.0 : -1.0;
    out.exp.freqs.push_back(grid[i]);
    out.exp.magnitude_db.push_back(mag);
    out.exp.phase_deg.push_back(pha);
    out.exp.coherence.push_back(coherence);
    out.sim.freqs.push_back(grid[i]);
    out.sim.magnitude_db.push_back(mag + sign * 0.364);
    out.sim.phase_deg.push_back(pha + sign * 2.27);
    out.sim.coherence.push_back(coherence);
  }
  return out;
}

simcred::SweepRecord plant_sweep_record(const simcred::SecondOrderPlant& plant, double f_start,
                                        double f_end, double duration, double rate, double snr_db,
                                        std::uint64_t seed) {
  const TimeSeries u = simcred::log_sweep(f_start, f_end, duration, rate, 1.0);
  const TimeSeries y = simcred::simulate_response(plant, u);
  const TimeSeries noisy = simcred::corrupt(y, {simcred::noise_stddev_for_snr(y, snr_db), seed, std::nullopt});
  return simcred::SweepRecord::make(u, noisy);
}

namespace oracle {

long double normalize(long double e, long double eps, long double eta_pass) {
  const long double k = eta_pass / std::sqrt(1.0L - eta_pass * eta_pass);
  return k * eps / std::sqrt(k * eps * k * eps + e * e);
}

double pairwise_max_diff(std::span<const double> v) {
  double best = 0.0;
  for (double a : v) {
    for (double b : v) best = std::max(best, std::abs(a - b));
  }
  return best;
}

std::vector<std::complex<double>> naive_dft(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

simcred::SpectralEstimate naive_welch(std::span<const double> x, std::span<const double> y,
                                      double rate, std::size_t seg, std::size_t step) {
  std::vector<double> w(seg);
  double u = 0.0;
  for (std::size_t i = 0; i < seg; ++i) {
    w[i] = std::pow(std::sin(std::numbers::pi * static_cast<double>(i) / static_cast<double>(seg)), 2);
    u += w[i] * w[i];
  }
  const std::size_t nseg = (x.size() - seg) / step + 1;
  const std::size_t bins = seg / 2 + 1;
  std::vector<double> sxx(bins), syy(bins);
  std::vector<std::complex<double>> sxy(bins);
  auto prep = [&](std::span<const double> s) {
    double m = 0.0;
    for (double v : s) m += v;
    m /= static_cast<double>(s.size());
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = (s[i] - m) * w[i];
    return out;
  };
  for (std::size_t s = 0; s < nseg; ++s) {
    const auto X = naive_dft(prep(x.subspan(s * step, seg)));
    const auto Y = naive_dft(prep(y.subspan(s * step, seg)));
    for (std::size_t k = 0; k < bins; ++k) {
      sxx[k] += std::norm(X[k]);
      syy[k] += std::norm(Y[k]);
      sxy[k] += std::conj(X[k]) * Y[k];
    }
  }
  simcred::SpectralEstimate est;
  est.n_segments = nseg;
  est.segment_len = seg;
  for (std::size_t k = 1; k < bins; ++k) {
    const bool nyquist = seg % 2 == 0 && k == seg / 2;
    const double scale = (nyquist ? 1.0 : 2.0) / (rate * u * static_cast<double>(nseg));
    est.freqs.push_back(2.0 * std::numbers::pi * static_cast<double>(k) * rate / static_cast<double>(seg));
    est.g_xx.push_back(scale * sxx[k]);
    est.g_yy.push_back(scale * syy[k]);
    est.g_xy.push_back(scale * sxy[k]);
  }
  return est;
}

}  // namespace oracle

}  // namespace fixtures
