#include "simcred/demo.hpp"

#include <fstream>
#include <numbers>

#include "json.hpp"
#include "simcred/csv_io.hpp"
#include "simcred/errors.hpp"
#include "simcred/synthgen.hpp"

namespace simcred {

namespace fs = std::filesystem;

namespace {

TimeSeries uniform_series(double duration, double rate, double value, std::string label,
                          std::string unit) {
  const auto n = static_cast<std::size_t>(duration * rate) + 1;
  std::vector<double> t(n), y(n, value);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) / rate;
  return TimeSeries(std::move(t), std::move(y), std::move(label), "s", std::move(unit));
}

// Sensor trace at rest, then with motor vibration from t = 21.5 s.
TimeSeries sensor_trace(double sigma_rest, double sigma_spin, double vib_amp, std::uint64_t seed,
                        const std::string& label, const std::string& unit) {
  const TimeSeries base = uniform_series(40.0, 200.0, 0.0, label, unit);
  const TimeSeries rest = corrupt(base, {sigma_rest, seed, std::nullopt});
  const TimeSeries spin = corrupt(base, {sigma_spin, seed + 1000, Vibration{vib_amp, 2.0 * std::numbers::pi * 40.0}});
  std::vector<double> y(base.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = base.abscissa()[i] < 21.5 ? rest.values()[i] : spin.values()[i];
  }
  return base.with_values(std::move(y));
}

}  // namespace

fs::path write_demo_dataset(const fs::path& out_dir, std::uint64_t seed) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw InputError("cannot create '" + out_dir.string() + "'");

  // sensor noise, assessed through population standard deviations
  write_time_series_csv(out_dir / "gyro_exp.csv", sensor_trace(6.0e-3, 2.0e-2, 2.0e-2, seed, "gyro_x", "rad/s"));
  write_time_series_csv(out_dir / "gyro_sim.csv", sensor_trace(5.9e-3, 2.02e-2, 2.0e-2, seed + 1, "gyro_x", "rad/s"));
  write_time_series_csv(out_dir / "accel_exp.csv", sensor_trace(4.0e-2, 7.0e-2, 5.0e-2, seed + 2, "accel_z", "m/s^2"));
  write_time_series_csv(out_dir / "accel_sim.csv", sensor_trace(3.95e-2, 7.1e-2, 5.0e-2, seed + 3, "accel_z", "m/s^2"));

  // step from hover to level flight
  const SecondOrderPlant plant{10.0, 0.3, 2.0};
  const SecondOrderPlant model{10.2, 0.31, 2.0};
  TimeSeries step = uniform_series(10.0, 100.0, 0.0, "cmd", "");
  {
    std::vector<double> u(step.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = step.abscissa()[i] >= 1.0 ? 0.175 : 0.0;
    step = step.with_values(std::move(u));
  }
  const TimeSeries flight = simulate_response(plant, step);
  write_time_series_csv(out_dir / "level_flight_exp.csv",
                        corrupt(flight, {2.0e-3, seed + 4, std::nullopt}));
  write_time_series_csv(out_dir / "level_flight_sim.csv", simulate_response(model, step));

  // sweep test on the pitch channel
  const TimeSeries sweep = log_sweep(0.25, 40.0, 120.0, 500.0, 1.0);
  auto record = [&](const SecondOrderPlant& p, std::uint64_t s) {
    const TimeSeries y = simulate_response(p, sweep);
    const TimeSeries noisy = corrupt(y, {noise_stddev_for_snr(y, 40.0), s, std::nullopt});
    return SweepRecord::make(sweep, noisy);
  };
  write_sweep_csv(out_dir / "pitch_sweep_exp.csv", record(plant, seed + 5));
  write_sweep_csv(out_dir / "pitch_sweep_sim.csv", record(model, seed + 6));

  using nlohmann::json;
  auto sensor_test = [](const std::string& name, const std::string& stem, double t0, double t1) {
    return json{{"kind", "performance"}, {"name", name},     {"exp", stem + "_exp.csv"},
                {"sim", stem + "_sim.csv"}, {"statistic", "stddev"}, {"window", {t0, t1}},
                {"k_p", 0.1}};
  };
  const json manifest = {
      {"config", {{"preset", "dynamics-weighted"}}},
      {"tests",
       {
           sensor_test("gyro_sigma_rest", "gyro", 0.0, 21.5),
           sensor_test("gyro_sigma_spin", "gyro", 21.5, 40.0),
           sensor_test("accel_sigma_rest", "accel", 0.0, 21.5),
           sensor_test("accel_sigma_spin", "accel", 21.5, 40.0),
           {{"kind", "time"},
            {"name", "level_flight"},
            {"exp", "level_flight_exp.csv"},
            {"sim", "level_flight_sim.csv"},
            {"smooth_window", 5}},
           {{"kind", "frequency"},
            {"name", "pitch_sweep"},
            {"exp", "pitch_sweep_exp.csv"},
            {"sim", "pitch_sweep_sim.csv"},
            {"band", {0.5, 30.0}}},
       }},
  };
  const fs::path path = out_dir / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << manifest.dump(2) << "\n";
  return path;
}

}  // namespace simcred
