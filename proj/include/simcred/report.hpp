#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "simcred/aggregate.hpp"
#include "simcred/manifest.hpp"
#include "simcred/spectral.hpp"
#include "simcred/timedomain.hpp"

namespace simcred {

inline constexpr const char* kToolVersion = "0.1.0";

// Outcome of one manifest test. Invalid tests keep their name and kind, carry
// a reason, and are left out of every aggregate.
struct TestRecord {
  std::string name;
  TestKind kind = TestKind::performance;
  bool valid = false;
  std::string reason;                  // empty when valid
  std::optional<double> error;         // e_p or e_t
  std::optional<double> threshold;     // eps_p or eps_t
  std::optional<double> index;         // eta_p, eta_t or eta_f
  std::optional<bool> coherence_pass;  // frequency tests only
  bool degenerate = false;
  std::map<std::string, double> details;
  std::vector<double> violating_freqs;

  friend bool operator==(const TestRecord&, const TestRecord&) = default;
};

struct Provenance {
  std::string tool_version = kToolVersion;
  std::string generated_at;
  std::string manifest;
  std::vector<InputFile> inputs;
  CredibilityConfig config;
  std::string stddev_convention = "population";

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct AssessmentReport {
  std::vector<TestRecord> tests;
  Verdict verdict;
  Provenance provenance;

  // eta_all only counts as certified when the worst-case gate passed.
  bool certified() const { return verdict.gate_passed; }
  std::vector<std::string> invalid_tests() const;

  friend bool operator==(const AssessmentReport&, const AssessmentReport&) = default;
};

// Curves kept alongside the report for plotting; not part of the JSON.
struct TestArtifacts {
  std::string name;
  std::optional<AlignedPair> aligned;
  std::optional<BodeComparison> bode;
};

struct AssessmentRun {
  AssessmentReport report;
  std::vector<TestArtifacts> artifacts;
  std::vector<PerformanceSample> performance_samples;
};

struct RunOptions {
  bool force_no_weighting = false;
  std::optional<std::string> pinned_timestamp;  // ISO 8601; current UTC time if absent
  bool parallel = true;
};

// Assesses every test, records failures of individual tests as invalid, and
// aggregates the valid ones. Throws DomainError if no test is valid.
AssessmentRun run_assessment(const RunManifest& manifest, const RunOptions& options = {});

nlohmann::json report_to_json(const AssessmentReport& report);
AssessmentReport report_from_json(const nlohmann::json& doc);

// Canonical serialized form (2-space indent, trailing newline).
std::string serialize_report(const AssessmentReport& report);
AssessmentReport parse_report(const std::string& text);

std::string render_markdown(const AssessmentReport& report);

enum class ReportFormat { json, markdown, plotdata };
ReportFormat report_format_from_string(const std::string& s);

// Writes report.json, report.md, or per-test plot CSVs under out_dir and
// returns the written paths. plotdata needs the run's artifacts. Throws
// InputError if out_dir cannot be written.
std::vector<std::filesystem::path> emit_report(const AssessmentRun& run, ReportFormat format,
                                               const std::filesystem::path& out_dir);
std::vector<std::filesystem::path> emit_report(const AssessmentReport& report, ReportFormat format,
                                               const std::filesystem::path& out_dir);

}  // namespace simcred
