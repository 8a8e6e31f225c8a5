#include "simcred/synthgen.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "simcred/errors.hpp"

namespace simcred {

void SecondOrderPlant::validate() const {
  if (!(natural_freq > 0.0) || !(damping > 0.0) || gain == 0.0 || !std::isfinite(gain)) {
    throw DomainError("second-order plant requires natural_freq > 0, damping > 0, gain != 0");
  }
}

LogSweep::LogSweep(double f_start, double f_end, double duration, double sample_rate,
                   double amplitude)
    : f_start_(f_start),
      f_end_(f_end),
      duration_(duration),
      sample_rate_(sample_rate),
      amplitude_(amplitude) {
  if (!(duration > 0.0) || !(amplitude > 0.0) || !(sample_rate > 0.0)) {
    throw DomainError("log sweep: duration, amplitude and sample rate must be positive");
  }
  if (!(f_start > 0.0) || !(f_end > f_start)) {
    throw DomainError("log sweep: need 0 < f_start < f_end");
  }
  if (!(f_end < std::numbers::pi * sample_rate)) {
    throw DomainError("log sweep: f_end must stay below the Nyquist frequency pi * sample_rate");
  }
  log_ratio_ = std::log(f_end / f_start);
}

double LogSweep::instantaneous_frequency(double t) const {
  return f_start_ * std::exp(log_ratio_ * t / duration_);
}

double LogSweep::phase(double t) const {
  // integral of the instantaneous frequency from 0 to t
  return f_start_ * duration_ / log_ratio_ * std::expm1(log_ratio_ * t / duration_);
}

double LogSweep::value(double t) const { return amplitude_ * std::sin(phase(t)); }

TimeSeries LogSweep::sample() const {
  const auto n = static_cast<std::size_t>(std::llround(duration_ * sample_rate_)) + 1;
  std::vector<double> t(n), x(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = static_cast<double>(i) / sample_rate_;
    x[i] = value(t[i]);
  }
  return TimeSeries(std::move(t), std::move(x), "sweep", "s", "");
}

TimeSeries log_sweep(double f_start, double f_end, double duration, double sample_rate,
                     double amplitude) {
  return LogSweep(f_start, f_end, duration, sample_rate, amplitude).sample();
}

TimeSeries simulate_response(const SecondOrderPlant& plant, const TimeSeries& input) {
  plant.validate();
  if (!input.is_uniform(1e-6)) {
    throw DomainError("simulate_response: input abscissa must be uniform");
  }
  const double wn2 = plant.natural_freq * plant.natural_freq;
  const double two_zeta_wn = 2.0 * plant.damping * plant.natural_freq;
  const double h = input.mean_step();
  const auto u = input.values();

  // state (y, y'); y'' = wn^2 (k u - y) - 2 zeta wn y'
  auto deriv = [&](double y, double v, double uu) {
    return std::pair{v, wn2 * (plant.gain * uu - y) - two_zeta_wn * v};
  };

  std::vector<double> out(u.size());
  double y = 0.0;
  double v = 0.0;
  out[0] = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double u0 = u[i];
    const double um = 0.5 * (u[i] + u[i + 1]);
    const double u1 = u[i + 1];
    const auto [k1y, k1v] = deriv(y, v, u0);
    const auto [k2y, k2v] = deriv(y + 0.5 * h * k1y, v + 0.5 * h * k1v, um);
    const auto [k3y, k3v] = deriv(y + 0.5 * h * k2y, v + 0.5 * h * k2v, um);
    const auto [k4y, k4v] = deriv(y + h * k3y, v + h * k3v, u1);
    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    out[i + 1] = y;
  }
  return TimeSeries(std::vector<double>(input.abscissa().begin(), input.abscissa().end()),
                    std::move(out), "response", input.abscissa_unit(), input.value_unit());
}

FrequencyResponse analytic_bode(const SecondOrderPlant& plant, std::span<const double> freqs) {
  plant.validate();
  FrequencyResponse fr;
  std::vector<double> phase;
  const double wn = plant.natural_freq;
  for (double w : freqs) {
    if (!(w > 0.0)) throw DomainError("analytic_bode: frequencies must be positive");
    const std::complex<double> den(wn * wn - w * w, 2.0 * plant.damping * wn * w);
    const std::complex<double> h = plant.gain * wn * wn / den;
    fr.freqs.push_back(w);
    fr.magnitude_db.push_back(20.0 * std::log10(std::abs(h)));
    phase.push_back(std::arg(h) * 180.0 / std::numbers::pi);
    fr.coherence.push_back(1.0);
  }
  fr.phase_deg = unwrap_degrees(std::move(phase));
  return fr;
}

GaussianSource::GaussianSource(std::uint64_t seed) : engine_(seed) {}

double GaussianSource::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianSource::next() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(theta);
  return r * std::cos(theta);
}

TimeSeries corrupt(const TimeSeries& series, const NoiseSpec& spec) {
  if (!(spec.stddev >= 0.0)) throw DomainError("noise spec: stddev must be non-negative");
  GaussianSource noise(spec.seed);
  const auto t = series.abscissa();
  const auto y = series.values();
  std::vector<double> out(y.begin(), y.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (spec.stddev > 0.0) out[i] += spec.stddev * noise.next();
    if (spec.vibration) out[i] += spec.vibration->amplitude * std::sin(spec.vibration->freq * t[i]);
  }
  return series.with_values(std::move(out));
}

double noise_stddev_for_snr(const TimeSeries& series, double snr_db) {
  double acc = 0.0;
  for (double v : series.values()) acc += v * v;
  const double rms = std::sqrt(acc / static_cast<double>(series.size()));
  return rms / std::pow(10.0, snr_db / 20.0);
}

}  // namespace simcred
