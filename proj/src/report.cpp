#include "simcred/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <future>
#include <sstream>

#include "simcred/csv_io.hpp"
#include "simcred/errors.hpp"
#include "simcred/performance.hpp"

namespace simcred {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TestOutcome {
  TestRecord record;
  TestArtifacts artifacts;
  std::optional<PerformanceSample> sample;
};

void mark_invalid(TestRecord& r, const std::exception& e) {
  r.valid = false;
  r.index.reset();
  r.reason = e.what();
}

TestOutcome assess_performance(const TestDescriptor& d, const PerformanceTest& t,
                               const CredibilityConfig& config) {
  TestOutcome out;
  out.record.name = d.name;
  out.record.kind = TestKind::performance;
  out.artifacts.name = d.name;
  out.sample = t.sample;
  try {
    out.record.error = performance_error(t.sample);
    out.record.threshold = performance_threshold(t.sample, config);
    out.record.index = normalize(*out.record.error, *out.record.threshold, config);
    out.record.details["p_exp"] = t.sample.p_exp;
    out.record.details["p_sim"] = t.sample.p_sim;
    out.record.valid = true;
  } catch (const DegenerateError& e) {
    out.record.degenerate = true;
    mark_invalid(out.record, e);
  } catch (const DomainError& e) {
    mark_invalid(out.record, e);
  }
  return out;
}

TestOutcome assess_time(const TestDescriptor& d, const TimeTest& t, const CredibilityConfig& base) {
  TestOutcome out;
  out.record.name = d.name;
  out.record.kind = TestKind::time;
  out.artifacts.name = d.name;
  try {
    const CredibilityConfig config = t.k_p ? base.with_k_p(*t.k_p) : base;
    const TimeSeries exp = smooth(t.exp, t.smooth_window);
    const TimeSeries sim = smooth(t.sim, t.smooth_window);
    AlignedPair pair = t.n_t ? align(exp, sim, *t.n_t) : align(exp, sim);
    out.record.details["n_t"] = static_cast<double>(pair.size());
    out.record.details["smooth_window"] = static_cast<double>(t.smooth_window);
    out.record.error = time_domain_error(pair);
    out.artifacts.aligned = std::move(pair);
    out.record.threshold = time_domain_threshold(*out.artifacts.aligned, config);
    out.record.index = normalize(*out.record.error, *out.record.threshold, config);
    out.record.valid = true;
  } catch (const DegenerateError& e) {
    out.record.degenerate = true;
    mark_invalid(out.record, e);
  } catch (const Error& e) {
    mark_invalid(out.record, e);
  }
  return out;
}

FrequencyResponse response_of(const SweepRecord& rec, const FrequencyTest& t,
                              std::map<std::string, double>& details, const char* tag) {
  const std::size_t seg = t.segment_len ? t.segment_len : default_segment_len(rec.input.size(), t.overlap);
  const SpectralEstimate est = estimate_spectra(rec, seg, t.overlap);
  details[std::string("n_segments_") + tag] = static_cast<double>(est.n_segments);
  details["segment_len"] = static_cast<double>(seg);
  return frequency_response(est);
}

TestOutcome assess_frequency(const TestDescriptor& d, const FrequencyTest& t,
                             const CredibilityConfig& base, const RunOptions& options) {
  TestOutcome out;
  TestRecord& r = out.record;
  r.name = d.name;
  r.kind = TestKind::frequency;
  out.artifacts.name = d.name;
  try {
    const CredibilityConfig config = t.k_p ? base.with_k_p(*t.k_p) : base;
    FrequencyResponse fr_exp;
    FrequencyResponse fr_sim;
    if (t.exp_sweep) {
      fr_exp = response_of(*t.exp_sweep, t, r.details, "exp");
      fr_sim = response_of(*t.sim_sweep, t, r.details, "sim");
    } else {
      fr_exp = *t.exp_bode;
      fr_sim = *t.sim_bode;
    }
    if (fr_exp.size() < 2 || fr_sim.size() < 2) {
      throw EstimationError("frequency response has fewer than two valid points");
    }
    const Band band = t.band.value_or(Band{std::max(fr_exp.freqs.front(), fr_sim.freqs.front()),
                                           std::min(fr_exp.freqs.back(), fr_sim.freqs.back())});
    r.details["band_lo"] = band.lo;
    r.details["band_hi"] = band.hi;

    const CoherenceCheck ce = check_coherence_criterion(fr_exp, band, config);
    const CoherenceCheck cs = check_coherence_criterion(fr_sim, band, config);
    r.coherence_pass = ce.passed && cs.passed;
    r.details["coherence_points_exp"] = static_cast<double>(ce.points_checked);
    r.details["coherence_points_sim"] = static_cast<double>(cs.points_checked);
    r.details["coherence_violations_exp"] = static_cast<double>(ce.violating_freqs.size());
    r.details["coherence_violations_sim"] = static_cast<double>(cs.violating_freqs.size());
    r.violating_freqs = ce.violating_freqs;
    r.violating_freqs.insert(r.violating_freqs.end(), cs.violating_freqs.begin(), cs.violating_freqs.end());
    std::sort(r.violating_freqs.begin(), r.violating_freqs.end());
    r.violating_freqs.erase(std::unique(r.violating_freqs.begin(), r.violating_freqs.end()),
                            r.violating_freqs.end());

    const bool weighting = t.weighting && !options.force_no_weighting;
    r.details["weighting"] = weighting ? 1.0 : 0.0;
    BodeComparison cmp = bode_errors(fr_exp, fr_sim, band, weighting, t.points_per_decade);
    r.details["n_f"] = static_cast<double>(cmp.grid.size());
    r.details["phase_shift_deg"] = cmp.phase_shift_deg;
    r.details["e_mag"] = cmp.e_mag;
    r.details["e_pha"] = cmp.e_pha;
    out.artifacts.bode = cmp;
    const BodeThresholds th = bode_thresholds(cmp, config);
    r.details["eps_mag"] = th.eps_mag;
    r.details["eps_pha"] = th.eps_pha;
    const FrequencyIndices idx = frequency_index(cmp.e_mag, th.eps_mag, cmp.e_pha, th.eps_pha, config);
    r.details["eta_mag"] = idx.eta_mag;
    r.details["eta_pha"] = idx.eta_pha;
    r.details["eta_f"] = idx.eta_f;

    if (!*r.coherence_pass) {
      r.valid = false;
      r.reason = "coherence below eps_co = " + format_number(config.eps_co()) + " at " +
                 std::to_string(r.violating_freqs.size()) + " frequency point(s) in band";
      return out;
    }
    r.index = idx.eta_f;
    r.valid = true;
  } catch (const DegenerateError& e) {
    r.degenerate = true;
    mark_invalid(r, e);
  } catch (const Error& e) {
    mark_invalid(r, e);
  }
  return out;
}

TestOutcome assess_one(const TestDescriptor& d, const CredibilityConfig& config,
                       const RunOptions& options) {
  return std::visit(
      [&](const auto& body) -> TestOutcome {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, PerformanceTest>) {
          return assess_performance(d, body, config);
        } else if constexpr (std::is_same_v<T, TimeTest>) {
          return assess_time(d, body, config);
        } else {
          return assess_frequency(d, body, config, options);
        }
      },
      d.body);
}

std::string utc_now_iso8601() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_double(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::string percent(std::optional<double> v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * *v);
  return buf;
}

std::string sci(std::optional<double> v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", *v);
  return buf;
}

std::optional<double> detail(const TestRecord& r, const char* key) {
  const auto it = r.details.find(key);
  if (it == r.details.end()) return std::nullopt;
  return it->second;
}

std::string file_stem_for(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  return out;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw InputError("cannot create output directory '" + dir.string() + "'");
  }
}

}  // namespace

std::vector<std::string> AssessmentReport::invalid_tests() const {
  std::vector<std::string> out;
  for (const auto& t : tests) {
    if (!t.valid) out.push_back(t.name);
  }
  return out;
}

AssessmentRun run_assessment(const RunManifest& manifest, const RunOptions& options) {
  std::vector<TestOutcome> outcomes;
  outcomes.reserve(manifest.tests.size());
  if (options.parallel && manifest.tests.size() > 1) {
    std::vector<std::future<TestOutcome>> futures;
    for (const auto& d : manifest.tests) {
      futures.push_back(std::async(std::launch::async, [&d, &manifest, &options] {
        return assess_one(d, manifest.config, options);
      }));
    }
    // reduce in manifest order
    for (auto& f : futures) outcomes.push_back(f.get());
  } else {
    for (const auto& d : manifest.tests) outcomes.push_back(assess_one(d, manifest.config, options));
  }

  AssessmentRun run;
  AssessmentSet set;
  for (auto& o : outcomes) {
    if (o.record.valid) {
      NamedIndex ni{o.record.name, *o.record.index};
      switch (o.record.kind) {
        case TestKind::performance: set.perf_indices.push_back(ni); break;
        case TestKind::time: set.time_indices.push_back(ni); break;
        case TestKind::frequency: set.freq_indices.push_back(ni); break;
      }
    }
    if (o.sample) run.performance_samples.push_back(*o.sample);
    run.report.tests.push_back(std::move(o.record));
    run.artifacts.push_back(std::move(o.artifacts));
  }
  if (set.empty()) throw DomainError("assessment: no valid test to aggregate");

  run.report.verdict = aggregate(set, manifest.config);
  Provenance& p = run.report.provenance;
  p.generated_at = options.pinned_timestamp.value_or(utc_now_iso8601());
  p.manifest = manifest.source;
  p.config = manifest.config;
  for (const auto& d : manifest.tests) {
    for (const auto& f : d.inputs) {
      if (std::find(p.inputs.begin(), p.inputs.end(), f) == p.inputs.end()) p.inputs.push_back(f);
    }
  }
  return run;
}

json report_to_json(const AssessmentReport& report) {
  json tests = json::array();
  for (const auto& t : report.tests) {
    tests.push_back({
        {"name", t.name},
        {"kind", to_string(t.kind)},
        {"valid", t.valid},
        {"reason", t.reason},
        {"error", optional_json(t.error)},
        {"threshold", optional_json(t.threshold)},
        {"index", optional_json(t.index)},
        {"coherence_pass", t.coherence_pass ? json(*t.coherence_pass) : json(nullptr)},
        {"degenerate", t.degenerate},
        {"details", t.details},
        {"violating_freqs", t.violating_freqs},
    });
  }
  const Verdict& v = report.verdict;
  json inputs = json::array();
  for (const auto& f : report.provenance.inputs) inputs.push_back({{"path", f.path}, {"sha256", f.sha256}});
  return {
      {"tests", tests},
      {"invalid_tests", report.invalid_tests()},
      {"verdict",
       {
           {"eta_bar_p", optional_json(v.averages.performance)},
           {"eta_bar_t", optional_json(v.averages.time)},
           {"eta_bar_f", optional_json(v.averages.frequency)},
           {"weights",
            {{"p", v.effective_weights.performance},
             {"t", v.effective_weights.time},
             {"f", v.effective_weights.frequency}}},
           {"eta_all", v.eta_all},
           {"eta_min", v.eta_min},
           {"min_source", v.min_source},
           {"gate_passed", v.gate_passed},
           {"eta_all_status", v.gate_passed ? "certified" : "not certified"},
       }},
      {"provenance",
       {
           {"tool_version", report.provenance.tool_version},
           {"generated_at", report.provenance.generated_at},
           {"manifest", report.provenance.manifest},
           {"inputs", inputs},
           {"config", config_to_json(report.provenance.config)},
           {"stddev_convention", report.provenance.stddev_convention},
       }},
  };
}

AssessmentReport report_from_json(const json& doc) {
  try {
    AssessmentReport r;
    for (const auto& t : doc.at("tests")) {
      TestRecord rec;
      rec.name = t.at("name").get<std::string>();
      rec.kind = test_kind_from_string(t.at("kind").get<std::string>());
      rec.valid = t.at("valid").get<bool>();
      rec.reason = t.at("reason").get<std::string>();
      rec.error = optional_double(t, "error");
      rec.threshold = optional_double(t, "threshold");
      rec.index = optional_double(t, "index");
      if (t.contains("coherence_pass") && !t.at("coherence_pass").is_null()) {
        rec.coherence_pass = t.at("coherence_pass").get<bool>();
      }
      rec.degenerate = t.at("degenerate").get<bool>();
      rec.details = t.at("details").get<std::map<std::string, double>>();
      rec.violating_freqs = t.at("violating_freqs").get<std::vector<double>>();
      r.tests.push_back(std::move(rec));
    }
    const json& v = doc.at("verdict");
    r.verdict.averages = {optional_double(v, "eta_bar_p"), optional_double(v, "eta_bar_t"),
                          optional_double(v, "eta_bar_f")};
    r.verdict.effective_weights = {v.at("weights").at("p").get<double>(),
                                   v.at("weights").at("t").get<double>(),
                                   v.at("weights").at("f").get<double>()};
    r.verdict.eta_all = v.at("eta_all").get<double>();
    r.verdict.eta_min = v.at("eta_min").get<double>();
    r.verdict.min_source = v.at("min_source").get<std::string>();
    r.verdict.gate_passed = v.at("gate_passed").get<bool>();
    const json& p = doc.at("provenance");
    r.provenance.tool_version = p.at("tool_version").get<std::string>();
    r.provenance.generated_at = p.at("generated_at").get<std::string>();
    r.provenance.manifest = p.at("manifest").get<std::string>();
    for (const auto& f : p.at("inputs")) {
      r.provenance.inputs.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>()});
    }
    r.provenance.config = config_from_json(p.at("config"));
    r.provenance.stddev_convention = p.at("stddev_convention").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  } catch (const DomainError& e) {
    throw InputError(std::string("report: ") + e.what());
  }
}

std::string serialize_report(const AssessmentReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

AssessmentReport parse_report(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
  return report_from_json(doc);
}

std::string render_markdown(const AssessmentReport& report) {
  std::ostringstream md;
  const Verdict& v = report.verdict;
  md << "# Simulation credibility assessment\n\n";

  auto rows_of = [&](TestKind kind) {
    std::vector<const TestRecord*> out;
    for (const auto& t : report.tests) {
      if (t.kind == kind) out.push_back(&t);
    }
    return out;
  };

  if (const auto perf = rows_of(TestKind::performance); !perf.empty()) {
    md << "## Performance\n\n"
       << "| Test | Parameter Error e_p | Threshold eps_p | Credibility Index eta_p |\n"
       << "|---|---|---|---|\n";
    for (const auto* t : perf) {
      md << "| " << t->name << " | " << sci(t->error) << " | " << sci(t->threshold) << " | "
         << (t->valid ? percent(t->index) : "invalid") << " |\n";
    }
    md << "\n";
  }
  if (const auto time = rows_of(TestKind::time); !time.empty()) {
    md << "## Time domain\n\n"
       << "| Curve | Mean Error e_t | Error Threshold eps_t | Assessment Index eta_t |\n"
       << "|---|---|---|---|\n";
    for (const auto* t : time) {
      md << "| " << t->name << " | " << sci(t->error) << " | " << sci(t->threshold) << " | "
         << (t->valid ? percent(t->index) : "invalid") << " |\n";
    }
    md << "\n";
  }
  if (const auto freq = rows_of(TestKind::frequency); !freq.empty()) {
    md << "## Frequency domain\n\n"
       << "| Test | e_mag [dB] | eps_mag [dB] | eta_mag | e_pha [deg] | eps_pha [deg] | eta_pha | eta_f |\n"
       << "|---|---|---|---|---|---|---|---|\n";
    for (const auto* t : freq) {
      md << "| " << t->name << " | " << sci(detail(*t, "e_mag")) << " | " << sci(detail(*t, "eps_mag"))
         << " | " << percent(detail(*t, "eta_mag")) << " | " << sci(detail(*t, "e_pha")) << " | "
         << sci(detail(*t, "eps_pha")) << " | " << percent(detail(*t, "eta_pha")) << " | "
         << (t->valid ? percent(t->index) : "invalid") << " |\n";
    }
    md << "\n";
  }

  if (const auto invalid = report.invalid_tests(); !invalid.empty()) {
    md << "## Invalid tests\n\n";
    for (const auto& t : report.tests) {
      if (!t.valid) md << "- " << t.name << " (" << to_string(t.kind) << "): " << t.reason << "\n";
    }
    md << "\n";
  }

  const CredibilityConfig& c = report.provenance.config;
  md << "## Overall\n\n"
     << "| Quantity | Value |\n|---|---|\n"
     << "| eta_bar_p | " << percent(v.averages.performance) << " |\n"
     << "| eta_bar_t | " << percent(v.averages.time) << " |\n"
     << "| eta_bar_f | " << percent(v.averages.frequency) << " |\n"
     << "| weights (p, t, f) | " << format_number(v.effective_weights.performance) << ", "
     << format_number(v.effective_weights.time) << ", " << format_number(v.effective_weights.frequency)
     << " |\n"
     << "| eta_all | " << percent(v.eta_all) << (v.gate_passed ? "" : " (not certified)") << " |\n"
     << "| eta_min | " << percent(v.eta_min) << " (" << v.min_source << ") |\n"
     << "| gate eta_min >= " << format_number(c.eps_min()) << " | " << (v.gate_passed ? "passed" : "failed")
     << " |\n\n";

  md << "## Configuration\n\n"
     << "- eta_pass = " << format_number(c.eta_pass()) << " (k_e = " << format_number(c.k_e()) << ")\n"
     << "- k_p = " << format_number(c.k_p()) << "\n"
     << "- eps_co = " << format_number(c.eps_co()) << "\n"
     << "- eps_min = " << format_number(c.eps_min()) << "\n"
     << "- standard deviation convention: " << report.provenance.stddev_convention << "\n"
     << "- tool version " << report.provenance.tool_version << ", generated "
     << report.provenance.generated_at << "\n";
  return md.str();
}

ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "md" || s == "markdown") return ReportFormat::markdown;
  if (s == "plotdata") return ReportFormat::plotdata;
  throw InputError("unknown report format '" + s + "' (expected json, md or plotdata)");
}

std::vector<fs::path> emit_report(const AssessmentReport& report, ReportFormat format,
                                  const fs::path& out_dir) {
  if (format == ReportFormat::plotdata) {
    throw InputError("plotdata needs the curves of a live assessment; re-run 'assess'");
  }
  ensure_dir(out_dir);
  const fs::path path = out_dir / (format == ReportFormat::json ? "report.json" : "report.md");
  auto out = open_out(path);
  out << (format == ReportFormat::json ? serialize_report(report) : render_markdown(report));
  if (!out) throw InputError("failed writing '" + path.string() + "'");
  return {path};
}

std::vector<fs::path> emit_report(const AssessmentRun& run, ReportFormat format, const fs::path& out_dir) {
  if (format != ReportFormat::plotdata) return emit_report(run.report, format, out_dir);
  ensure_dir(out_dir);
  std::vector<fs::path> written;

  if (!run.performance_samples.empty()) {
    const fs::path path = out_dir / "performance.csv";
    auto out = open_out(path);
    out << "name,unit,p_exp,p_sim,error,threshold,index\n";
    for (const auto& s : run.performance_samples) {
      const auto rec = std::find_if(run.report.tests.begin(), run.report.tests.end(),
                                    [&](const TestRecord& r) { return r.name == s.name; });
      auto cell = [](std::optional<double> v) { return v ? format_number(*v) : std::string(); };
      out << s.name << ',' << s.unit << ',' << format_number(s.p_exp) << ',' << format_number(s.p_sim)
          << ',' << cell(rec->error) << ',' << cell(rec->threshold) << ',' << cell(rec->index) << '\n';
    }
    written.push_back(path);
  }

  for (const auto& a : run.artifacts) {
    if (a.aligned) {
      const fs::path path = out_dir / (file_stem_for(a.name) + "_time.csv");
      auto out = open_out(path);
      out << "t,y_exp,y_sim,error\n";
      const AlignedPair& p = *a.aligned;
      for (std::size_t i = 0; i < p.size(); ++i) {
        out << format_number(p.grid[i]) << ',' << format_number(p.y_exp[i]) << ','
            << format_number(p.y_sim[i]) << ',' << format_number(p.y_sim[i] - p.y_exp[i]) << '\n';
      }
      written.push_back(path);
    }
    if (a.bode) {
      const fs::path path = out_dir / (file_stem_for(a.name) + "_bode.csv");
      auto out = open_out(path);
      out << "f,mag_e,mag_s,phase_e,phase_s,coherence,weight\n";
      const BodeComparison& b = *a.bode;
      for (std::size_t i = 0; i < b.grid.size(); ++i) {
        out << format_number(b.grid[i]) << ',' << format_number(b.mag_exp[i]) << ','
            << format_number(b.mag_sim[i]) << ',' << format_number(b.phase_exp[i]) << ','
            << format_number(b.phase_sim[i]) << ',' << format_number(b.coherence_exp[i]) << ','
            << format_number(b.weights[i]) << '\n';
      }
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace simcred
