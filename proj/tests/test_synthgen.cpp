#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "simcred/errors.hpp"
#include "simcred/performance.hpp"
#include "simcred/synthgen.hpp"

using namespace simcred;

namespace {

constexpr double kPi = std::numbers::pi;

TimeSeries uniform_series(double rate, std::size_t n, double (*f)(double)) {
  std::vector<double> t(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = static_cast<double>(i) / rate;
    y[i] = f(t[i]);
  }
  return TimeSeries(t, y);
}

double peak_amplitude(std::span<const double> v, std::size_t from) {
  double m = 0;
  for (std::size_t i = from; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

}  // namespace

TEST_CASE("log sweep") {
  const LogSweep sw(0.25, 40.0, 120.0, 500.0, 1.5);
  CHECK(sw.instantaneous_frequency(0.0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(sw.instantaneous_frequency(120.0) == doctest::Approx(40.0).epsilon(1e-6));
  CHECK(sw.phase(0.0) == 0.0);
  // numeric derivative of phase agrees with the instantaneous frequency
  const double h = 1e-5, t = 70.0;
  CHECK((sw.phase(t + h) - sw.phase(t - h)) / (2 * h) == doctest::Approx(sw.instantaneous_frequency(t)).epsilon(1e-6));

  const auto s = log_sweep(0.25, 40.0, 120.0, 500.0, 1.5);
  CHECK(s.size() == 60001);
  CHECK(s.back_time() == doctest::Approx(120.0));
  CHECK(peak_amplitude(s.values(), 0) <= 1.5);
  CHECK(peak_amplitude(s.values(), 0) == doctest::Approx(1.5).epsilon(1e-4));
  CHECK(log_sweep(0.25, 40.0, 120.0, 500.0, 1.5) == s);

  CHECK_THROWS_AS(log_sweep(0.25, 40.0, 10.0, 10.0, 1.0), DomainError);  // above Nyquist
  CHECK_THROWS_AS(log_sweep(5.0, 1.0, 10.0, 100.0, 1.0), DomainError);
  CHECK_THROWS_AS(log_sweep(0.0, 1.0, 10.0, 100.0, 1.0), DomainError);
  CHECK_THROWS_AS(log_sweep(0.1, 1.0, 10.0, 100.0, 0.0), DomainError);
}

TEST_CASE("step response settles at the gain") {
  const SecondOrderPlant plant{10.0, 0.3, 2.0};
  const auto u = uniform_series(500.0, 10001, [](double) { return 1.5; });
  const auto y = simulate_response(plant, u);
  CHECK(y.values().back() == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(y.values().front() == 0.0);
}

TEST_CASE("resonance amplitude ratio") {
  const SecondOrderPlant plant{10.0, 0.5, 1.0};
  const auto u = uniform_series(1000.0, 20001, [](double t) { return std::sin(10.0 * t); });
  const auto y = simulate_response(plant, u);
  CHECK(peak_amplitude(y.values(), 15000) == doctest::Approx(1.0 / (2 * 0.5)).epsilon(0.01));
}

TEST_CASE("zero input gives zero output") {
  const auto u = uniform_series(100.0, 500, [](double) { return 0.0; });
  const auto y = simulate_response({3.0, 0.2, -1.0}, u);
  for (double v : y.values()) CHECK(v == 0.0);
}

TEST_CASE("simulate rejects bad input") {
  const TimeSeries nonuniform({0, 1, 3}, {0, 1, 0});
  CHECK_THROWS_AS(simulate_response({1, 1, 1}, nonuniform), DomainError);
  const auto u = uniform_series(100.0, 10, [](double) { return 0.0; });
  CHECK_THROWS_AS(simulate_response({0, 1, 1}, u), DomainError);
  CHECK_THROWS_AS(simulate_response({1, 0, 1}, u), DomainError);
  CHECK_THROWS_AS(simulate_response({1, 1, 0}, u), DomainError);
}

TEST_CASE("analytic bode") {
  const SecondOrderPlant plant{10.0, 0.3, 2.0};
  const std::vector<double> f{1e-4, 10.0, 1e3, 1e5};
  const auto fr = analytic_bode(plant, f);
  CHECK(fr.magnitude_db[0] == doctest::Approx(20 * std::log10(2.0)).epsilon(1e-6));
  CHECK(std::abs(fr.phase_deg[0]) < 1e-3);
  CHECK(fr.phase_deg[1] == doctest::Approx(-90.0));
  CHECK(fr.magnitude_db[1] == doctest::Approx(20 * std::log10(2.0 / 0.6)));
  CHECK((fr.magnitude_db[3] - fr.magnitude_db[2]) / 2.0 == doctest::Approx(-40.0).epsilon(1e-3));
  CHECK(fr.phase_deg[3] == doctest::Approx(-180.0).epsilon(1e-3));
  for (double c : fr.coherence) CHECK(c == 1.0);

  const auto neg = analytic_bode({10.0, 0.3, -2.0}, f);
  for (std::size_t i = 1; i < neg.size(); ++i) CHECK(std::abs(neg.phase_deg[i] - neg.phase_deg[i - 1]) < 180);
}

TEST_CASE("corrupt") {
  const auto base = uniform_series(100.0, 100000, [](double t) { return std::sin(t); });
  CHECK(corrupt(base, {0.0, 7, std::nullopt}) == base);

  const NoiseSpec spec{0.3, 42, std::nullopt};
  const auto a = corrupt(base, spec);
  CHECK(a == corrupt(base, spec));
  CHECK_FALSE(a == corrupt(base, {0.3, 43, std::nullopt}));

  std::vector<double> diff(base.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a.values()[i] - base.values()[i];
  CHECK(population_stddev(diff) == doctest::Approx(0.3).epsilon(0.05));
  CHECK(std::abs(sample_mean(diff)) < 0.01);

  const auto vib = corrupt(base, {0.0, 1, Vibration{0.5, 2 * kPi * 5}});
  CHECK(vib.values()[10] - base.values()[10] == doctest::Approx(0.5 * std::sin(2 * kPi * 5 * 0.1)));

  CHECK_THROWS_AS(corrupt(base, {-1.0, 1, std::nullopt}), DomainError);
}

TEST_CASE("noise level for an SNR") {
  const auto s = uniform_series(100.0, 1000, [](double) { return 2.0; });
  CHECK(noise_stddev_for_snr(s, 20.0) == doctest::Approx(0.2));
  CHECK(noise_stddev_for_snr(s, 40.0) == doctest::Approx(0.02));
}

TEST_CASE("gaussian source") {
  GaussianSource a(9), b(9);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  GaussianSource g(123);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double v = g.next();
    sum += v;
    sq += v * v;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
}
