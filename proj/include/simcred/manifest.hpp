#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "simcred/core_index.hpp"
#include "simcred/performance.hpp"
#include "simcred/spectral.hpp"
#include "simcred/time_series.hpp"

namespace simcred {

enum class TestKind { performance, time, frequency };

std::string to_string(TestKind kind);
TestKind test_kind_from_string(const std::string& s);

struct PerformanceTest {
  PerformanceSample sample;
};

struct TimeTest {
  TimeSeries exp;
  TimeSeries sim;
  std::optional<std::size_t> n_t;   // default: experimental samples inside the overlap
  std::size_t smooth_window = 1;    // 1 = no smoothing
  std::optional<double> k_p;
};

struct FrequencyTest {
  // Either two sweep records or two ready-made responses.
  std::optional<SweepRecord> exp_sweep;
  std::optional<SweepRecord> sim_sweep;
  std::optional<FrequencyResponse> exp_bode;
  std::optional<FrequencyResponse> sim_bode;
  std::optional<Band> band;         // required for sweep data
  std::size_t segment_len = 0;      // 0 = sized for 16 segments
  double overlap = 0.5;
  bool weighting = true;
  double points_per_decade = 50.0;
  std::optional<double> k_p;
};

struct InputFile {
  std::string path;    // as written in the manifest
  std::string sha256;  // hex digest of the file contents

  friend bool operator==(const InputFile&, const InputFile&) = default;
};

struct TestDescriptor {
  std::string name;
  std::variant<PerformanceTest, TimeTest, FrequencyTest> body;
  std::vector<InputFile> inputs;

  TestKind kind() const { return static_cast<TestKind>(body.index()); }
};

struct RunManifest {
  std::string source;  // manifest path as given
  CredibilityConfig config;
  std::vector<TestDescriptor> tests;
};

// Parses a JSON manifest, resolves data paths relative to the manifest's
// directory and loads every referenced file immediately. `base` supplies the
// config that the manifest's "config" block overrides. Throws InputError with
// file (and line, for CSV data) context on any problem.
RunManifest load_manifest(const std::filesystem::path& path,
                          const CredibilityConfig& base = CredibilityConfig{});

// Same, from an in-memory document; relative paths resolve against base_dir.
RunManifest parse_manifest(const nlohmann::json& doc, const std::filesystem::path& base_dir,
                           const CredibilityConfig& base = CredibilityConfig{},
                           std::string source = {});

// Hex SHA-256 of a file's bytes.
std::string file_sha256(const std::filesystem::path& path);

}  // namespace simcred
