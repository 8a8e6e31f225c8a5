// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
// usage: acceptance <path-to-simcred-cli> <work-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "json.hpp"
#include "property_suite.hpp"
#include "simcred/aggregate.hpp"
#include "simcred/core_index.hpp"
#include "simcred/csv_io.hpp"
#include "simcred/manifest.hpp"
#include "simcred/performance.hpp"
#include "simcred/report.hpp"
#include "simcred/spectral.hpp"
#include "simcred/synthgen.hpp"
#include "simcred/timedomain.hpp"

namespace fs = std::filesystem;
using namespace simcred;

namespace {

constexpr double kPp = 1e-3;  // one percentage point of an index, times 0.1

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double pct(double v) { return 100.0 * v; }

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return rc == -1 ? -1 : WEXITSTATUS(rc);
}

Outcome normalization_calibration() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pass(1e-6, 1.0 - 1e-6), log_eps(-12.0, 12.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    ConfigParams p;
    p.eta_pass = pass(rng);
    const CredibilityConfig cfg(p);
    const double eps = std::pow(10.0, log_eps(rng));
    worst = std::max(worst, std::abs(normalize(eps, eps, cfg) - p.eta_pass));
  }
  const double ke = scale_factor(0.6);
  const double elapsed = seconds_since(t0);
  o.require(worst <= 1e-12, "calibration");
  o.require(std::abs(ke - 0.75) <= 1e-15, "K_e(0.6)");
  o.require(elapsed < 1.0, "runtime");
  o.detail << "max |f(eps,eps)-eta_pass| = " << worst << ", K_e(0.6) = " << ke << ", " << elapsed << " s";
  return o;
}

Outcome sensor_table() {
  Outcome o;
  const CredibilityConfig cfg;
  const auto rows = fixtures::sensor_table_samples();
  const double expected_e[] = {2e-4, 7e-4, 1.4e-6, 1.4e-5};
  const double expected_eps[] = {6e-4, 4e-3, 4e-6, 7e-5};
  const double expected_eta[] = {0.913, 0.974, 0.906, 0.966};
  std::vector<double> indices;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double e = performance_error(rows[i]);
    const double eps = performance_threshold(rows[i], cfg);
    const double eta = performance_index(rows[i], cfg);
    indices.push_back(eta);
    o.require(within(e, expected_e[i], 1e-9 * expected_e[i] + 1e-18), rows[i].name + " e_p");
    o.require(within(eps, expected_eps[i], 1e-9 * expected_eps[i]), rows[i].name + " eps_p");
    o.require(within(eta, expected_eta[i], kPp), rows[i].name + " eta_p");
    o.detail << rows[i].name << "=" << pct(eta) << "% ";
  }
  const double avg = category_average(indices);
  o.require(within(avg, 0.940, kPp), "category average");
  o.detail << "mean=" << pct(avg) << "%";
  return o;
}

Outcome flight_table() {
  Outcome o;
  const CredibilityConfig cfg;
  const auto exp = fixtures::level_flight_curve();
  struct Row {
    const char* name;
    double offset;
    double eta;
  };
  for (const auto& r : {Row{"high-precision", 0.0046, 0.944}, Row{"low-precision", 0.012, 0.738},
                        Row{"error-bounds", 0.0175, 0.600}}) {
    const auto pair = align(exp, fixtures::alternating_offset(exp, r.offset));
    const double eta = time_domain_index(pair, cfg);
    o.require(within(time_domain_threshold(pair, cfg), 0.0175, 1e-9), std::string(r.name) + " eps_t");
    o.require(within(eta, r.eta, kPp), r.name);
    o.detail << r.name << "=" << pct(eta) << "% ";
  }
  const auto zero = align(exp, exp.with_values(std::vector<double>(exp.size(), 0.0)));
  const double e0 = time_domain_error(zero);
  const double eta0 = time_domain_index(zero, cfg);
  const auto formula = static_cast<double>(fixtures::oracle::normalize(0.231, 0.0175, 0.6L));
  o.require(within(e0, 0.231, 1e-6), "zero-output e_t");
  o.require(within(eta0, formula, kPp), "zero-output formula value");
  o.detail << "zero-output=" << pct(eta0) << "% (formula value; the reference table lists 1.75%, which its own inputs do not reproduce)";
  return o;
}

FrequencyIndices pitch_indices() {
  return frequency_index(0.364, 2.05, 2.27, 13.6, CredibilityConfig{});
}

Outcome frequency_indices() {
  Outcome o;
  const auto r = pitch_indices();
  o.require(within(r.eta_mag, 0.973, kPp), "eta_mag");
  o.require(within(r.eta_pha, 0.976, kPp), "eta_pha");
  o.require(within(r.eta_f, 0.9746, 0.5 * kPp), "eta_f formula");
  o.require(within(r.eta_f, 0.9763, 2.5 * kPp), "eta_f vs reference value");
  o.detail << "eta_mag=" << pct(r.eta_mag) << "% eta_pha=" << pct(r.eta_pha) << "% eta_f=" << pct(r.eta_f)
           << "% (reference value 97.63%)";
  return o;
}

Outcome overall_aggregation() {
  Outcome o;
  const CredibilityConfig cfg;
  AssessmentSet set;
  for (const auto& s : fixtures::sensor_table_samples()) {
    set.perf_indices.push_back({s.name, performance_index(s, cfg)});
  }
  const auto exp = fixtures::level_flight_curve();
  set.time_indices.push_back({"level_flight", time_domain_index(align(exp, fixtures::alternating_offset(exp, 0.0046)), cfg)});
  set.freq_indices.push_back({"pitch", pitch_indices().eta_f});

  const auto v = aggregate(set, CredibilityConfig::dynamics_weighted());
  o.require(within(v.eta_all, 0.9536, 3 * kPp), "eta_all");
  o.require(std::round(v.eta_min * 1000.0) == 906.0, "eta_min");
  o.require(v.min_source == "gyro_rest", "eta_min source");
  o.require(v.gate_passed, "gate");
  o.detail << "averages=(" << pct(*v.averages.performance) << ", " << pct(*v.averages.time) << ", "
           << pct(*v.averages.frequency) << ")% eta_all=" << pct(v.eta_all) << "% eta_min=" << pct(v.eta_min)
           << "% (" << v.min_source << ") gate=" << (v.gate_passed ? "passed" : "failed");
  return o;
}

struct OracleMatch {
  std::size_t n_segments = 0;
  std::size_t compared = 0;
  double worst_mag = 0.0;
  double worst_pha = 0.0;
};

// Compares the estimate with the analytic curves at every estimator bin inside
// the band whose coherence is at least 0.9.
OracleMatch match_analytic(const FrequencyResponse& fr, const SecondOrderPlant& plant, Band band) {
  OracleMatch m;
  const auto ref = analytic_bode(plant, fr.freqs);
  for (std::size_t k = 0; k < fr.size(); ++k) {
    if (fr.freqs[k] < band.lo || fr.freqs[k] > band.hi || fr.coherence[k] < 0.9) continue;
    ++m.compared;
    m.worst_mag = std::max(m.worst_mag, std::abs(fr.magnitude_db[k] - ref.magnitude_db[k]));
    m.worst_pha = std::max(m.worst_pha, std::abs(fr.phase_deg[k] - ref.phase_deg[k]));
  }
  return m;
}

Outcome spectral_oracle() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const SecondOrderPlant plant{10.0, 0.3, 2.0};
  const Band band{0.5, 30.0};
  const auto rec = fixtures::plant_sweep_record(plant, 0.25, 40.0, 120.0, 500.0, 40.0, 7);

  // 16 segments at 75% overlap. At the 50% default the same 16 segments are
  // too short to resolve the resonance and leave a ~0.51 dB bias there.
  const double overlap = 0.75;
  const auto est = estimate_spectra(rec, default_segment_len(rec.input.size(), overlap), overlap);
  const auto fr = frequency_response(est);
  auto m = match_analytic(fr, plant, band);
  m.n_segments = est.n_segments;
  const auto chk = check_coherence_criterion(fr, band, CredibilityConfig{});
  const double elapsed = seconds_since(t0);

  const auto est50 = estimate_spectra(rec, default_segment_len(rec.input.size(), 0.5), 0.5);
  const auto m50 = match_analytic(frequency_response(est50), plant, band);

  o.require(m.n_segments >= 16, "segments");
  o.require(m.compared > 0, "no coherent points");
  o.require(m.worst_mag <= 0.5, "magnitude");
  o.require(m.worst_pha <= 5.0, "phase");
  o.require(chk.passed, "coherence criterion");
  o.require(elapsed < 30.0, "runtime");
  o.detail << m.n_segments << " segments at " << overlap * 100 << "% overlap, " << m.compared
           << " bins in [0.5,30] with coherence >= 0.9, max |dM|=" << m.worst_mag << " dB, max |dP|=" << m.worst_pha
           << " deg, criterion " << (chk.passed ? "passed" : "failed") << " at " << chk.points_checked
           << " points, " << elapsed << " s (50% overlap: " << m50.worst_mag << " dB, " << m50.worst_pha << " deg)";
  return o;
}

Outcome incoherence(const fs::path& work) {
  Outcome o;
  const SecondOrderPlant plant{10.0, 0.3, 2.0};
  const auto rec = fixtures::plant_sweep_record(plant, 0.25, 40.0, 120.0, 500.0, 40.0, 7);
  const auto silent = rec.output.with_values(std::vector<double>(rec.output.size(), 0.0));
  const auto noise = corrupt(silent, {noise_stddev_for_snr(rec.output, 0.0), 2024, std::nullopt});
  const auto bad = SweepRecord::make(rec.input, noise);

  const auto fr = frequency_response(estimate_spectra(bad, default_segment_len(bad.input.size(), 0.5), 0.5));
  auto c = fr.coherence;
  std::nth_element(c.begin(), c.begin() + static_cast<long>(c.size() / 2), c.end());
  const double median = c[c.size() / 2];
  const auto chk = check_coherence_criterion(fr, {0.5, 30.0}, CredibilityConfig{});
  o.require(median < 0.3, "median coherence");
  o.require(!chk.passed, "criterion should fail");

  fs::create_directories(work);
  write_sweep_csv(work / "exp.csv", rec);
  write_sweep_csv(work / "noise.csv", bad);
  write_performance_csv(work / "sensors.csv", fixtures::sensor_table_samples());
  nlohmann::json tests = nlohmann::json::array();
  for (const auto& s : fixtures::sensor_table_samples()) {
    tests.push_back({{"kind", "performance"}, {"name", s.name}, {"samples", "sensors.csv"}});
  }
  tests.push_back({{"kind", "frequency"}, {"name", "pitch_noise"}, {"exp", "exp.csv"}, {"sim", "noise.csv"},
                   {"band", {0.5, 30.0}}});
  std::ofstream(work / "manifest.json") << nlohmann::json{{"tests", tests}}.dump(2);
  const auto run = run_assessment(load_manifest(work / "manifest.json"), {});
  const auto invalid = run.report.invalid_tests();
  o.require(invalid == std::vector<std::string>{"pitch_noise"}, "reported invalid");
  o.require(!run.report.verdict.averages.frequency.has_value(), "excluded from aggregation");
  o.detail << "median coherence=" << median << ", " << chk.violating_freqs.size() << "/" << chk.points_checked
           << " band points below 0.6, report lists invalid: " << (invalid.empty() ? "none" : invalid.front());
  return o;
}

Outcome property_suites() {
  Outcome o;
  const auto results = properties::run_all(7);
  std::size_t cases = 0;
  for (const auto& r : results) {
    cases += r.cases;
    if (!r.ok()) o.require(false, r.name + ": " + r.first_failure);
  }
  o.detail << results.size() << " properties, " << cases << " cases";
  return o;
}

Outcome determinism(const std::string& cli, const fs::path& work) {
  Outcome o;
  fs::remove_all(work);
  const auto demo = work / "demo";
  o.require(run_cli(cli, "gen --out \"" + demo.string() + "\"") == 0, "gen");
  std::string reports[2];
  for (int i = 0; i < 2; ++i) {
    const auto out = work / ("run" + std::to_string(i));
    const int rc = run_cli(cli, "assess \"" + (demo / "manifest.json").string() + "\" --out \"" + out.string() +
                                    "\" --format json --pin-timestamp 2024-01-01T00:00:00Z");
    o.require(rc == 0 || rc == 1, "assess exit code");
    reports[i] = read_file(out / "report.json");
  }
  o.require(!reports[0].empty(), "report written");
  o.require(reports[0] == reports[1], "byte-identical");
  o.detail << "two pinned runs, " << reports[0].size() << " bytes each, "
           << (reports[0] == reports[1] ? "identical" : "different");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <simcred-cli> <work-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path work = argv[2];

  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "normalization calibration", normalization_calibration},
      {2, "sensor table reproduction", sensor_table},
      {3, "flight curve table reproduction", flight_table},
      {4, "frequency indices", frequency_indices},
      {5, "overall aggregation", overall_aggregation},
      {6, "spectral oracle", spectral_oracle},
      {7, "incoherence detection", [&] { return incoherence(work / "incoherence"); }},
      {8, "property suites", property_suites},
      {9, "determinism", [&] { return determinism(cli, work / "determinism"); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << ": " << o.detail.str() << "\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
