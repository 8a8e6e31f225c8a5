#include "simcred/manifest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <memory>
#include <set>

#include "json.hpp"
#include "simcred/csv_io.hpp"
#include "simcred/errors.hpp"

namespace simcred {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(TestKind kind) {
  switch (kind) {
    case TestKind::performance: return "performance";
    case TestKind::time: return "time";
    case TestKind::frequency: return "frequency";
  }
  return "unknown";
}

TestKind test_kind_from_string(const std::string& s) {
  if (s == "performance") return TestKind::performance;
  if (s == "time") return TestKind::time;
  if (s == "frequency") return TestKind::frequency;
  throw InputError("unknown test kind '" + s + "' (expected performance, time or frequency)");
}

std::string file_sha256(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("sha256: digest initialisation failed");
  }
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

namespace {

// Shared state while one test entry is decoded.
struct EntryContext {
  const json& entry;
  const fs::path& base_dir;
  std::string name;
  std::vector<InputFile>& inputs;

  std::string where() const { return "test '" + name + "'"; }

  bool has(const char* key) const { return entry.contains(key) && !entry.at(key).is_null(); }

  template <class T>
  T get(const char* key) const {
    try {
      return entry.at(key).get<T>();
    } catch (const json::exception& e) {
      throw InputError(where() + ": field '" + key + "': " + e.what());
    }
  }

  template <class T>
  std::optional<T> opt(const char* key) const {
    if (!has(key)) return std::nullopt;
    return get<T>(key);
  }

  fs::path file(const char* key) const {
    if (!has(key)) throw InputError(where() + ": missing field '" + key + "'");
    const auto rel = get<std::string>(key);
    const fs::path full = fs::path(rel).is_absolute() ? fs::path(rel) : base_dir / rel;
    if (!fs::exists(full)) {
      throw InputError(where() + ": data file not found: '" + full.string() + "'");
    }
    const bool seen = std::any_of(inputs.begin(), inputs.end(),
                                  [&](const InputFile& f) { return f.path == rel; });
    if (!seen) inputs.push_back({rel, file_sha256(full)});
    return full;
  }
};

double series_statistic(const TimeSeries& s, const std::string& stat,
                        const std::optional<std::pair<double, double>>& window,
                        const EntryContext& ctx) {
  std::vector<double> picked;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t = s.abscissa()[i];
    if (window && (t < window->first || t > window->second)) continue;
    picked.push_back(s.values()[i]);
  }
  if (picked.empty()) throw InputError(ctx.where() + ": statistic window selects no samples");
  if (stat == "mean") return sample_mean(picked);
  if (stat == "stddev") return population_stddev(picked);
  throw InputError(ctx.where() + ": unknown statistic '" + stat + "' (expected mean or stddev)");
}

PerformanceTest decode_performance(const EntryContext& ctx) {
  PerformanceSample s;
  if (ctx.has("samples")) {
    const auto rows = read_performance_csv(ctx.file("samples"));
    const auto wanted = ctx.opt<std::string>("sample").value_or(ctx.name);
    const auto it = std::find_if(rows.begin(), rows.end(),
                                 [&](const PerformanceSample& r) { return r.name == wanted; });
    if (it == rows.end()) {
      throw InputError(ctx.where() + ": sample '" + wanted + "' not found in samples file");
    }
    s = *it;
  } else if (ctx.has("exp") || ctx.has("sim")) {
    const auto stat = ctx.opt<std::string>("statistic").value_or("stddev");
    std::optional<std::pair<double, double>> window;
    if (ctx.has("window")) {
      const auto w = ctx.get<std::vector<double>>("window");
      if (w.size() != 2 || !(w[1] > w[0])) {
        throw InputError(ctx.where() + ": 'window' must be [t_begin, t_end] with t_end > t_begin");
      }
      window = std::pair{w[0], w[1]};
    }
    const TimeSeries exp = read_time_series_csv(ctx.file("exp"));
    const TimeSeries sim = read_time_series_csv(ctx.file("sim"));
    s.unit = exp.value_unit();
    if (exp.value_unit() != sim.value_unit()) {
      throw InputError(ctx.where() + ": experimental unit '" + exp.value_unit() +
                       "' differs from simulated unit '" + sim.value_unit() + "'");
    }
    s.p_exp = series_statistic(exp, stat, window, ctx);
    s.p_sim = series_statistic(sim, stat, window, ctx);
  } else if (ctx.has("p_exp") && ctx.has("p_sim")) {
    s.p_exp = ctx.get<double>("p_exp");
    s.p_sim = ctx.get<double>("p_sim");
    s.unit = ctx.opt<std::string>("unit").value_or("");
  } else {
    throw InputError(ctx.where() + ": performance test needs 'samples', 'exp'/'sim', or 'p_exp'/'p_sim'");
  }
  s.name = ctx.name;
  if (auto k = ctx.opt<double>("k_p")) s.k_p_override = k;
  if (auto e = ctx.opt<double>("eps")) s.eps_override = e;
  try {
    validate(s);
  } catch (const DomainError& e) {
    throw InputError(ctx.where() + ": " + e.what());
  }
  return {std::move(s)};
}

TimeTest decode_time(const EntryContext& ctx) {
  TimeTest t;
  t.exp = read_time_series_csv(ctx.file("exp"));
  t.sim = read_time_series_csv(ctx.file("sim"));
  if (auto n = ctx.opt<long long>("n_t")) {
    if (*n < 2) throw InputError(ctx.where() + ": n_t must be at least 2");
    t.n_t = static_cast<std::size_t>(*n);
  }
  if (auto w = ctx.opt<long long>("smooth_window")) {
    if (*w < 1 || *w % 2 == 0) throw InputError(ctx.where() + ": smooth_window must be a positive odd count");
    t.smooth_window = static_cast<std::size_t>(*w);
  }
  t.k_p = ctx.opt<double>("k_p");
  return t;
}

FrequencyTest decode_frequency(const EntryContext& ctx) {
  FrequencyTest f;
  const auto data = ctx.opt<std::string>("data").value_or("sweep");
  if (data == "sweep") {
    f.exp_sweep = read_sweep_csv(ctx.file("exp"));
    f.sim_sweep = read_sweep_csv(ctx.file("sim"));
  } else if (data == "bode") {
    f.exp_bode = read_bode_csv(ctx.file("exp"));
    f.sim_bode = read_bode_csv(ctx.file("sim"));
  } else {
    throw InputError(ctx.where() + ": unknown data '" + data + "' (expected sweep or bode)");
  }
  if (ctx.has("band")) {
    const auto b = ctx.get<std::vector<double>>("band");
    if (b.size() != 2 || !(b[0] > 0.0) || !(b[1] > b[0])) {
      throw InputError(ctx.where() + ": 'band' must be [f_a, f_b] rad/s with 0 < f_a < f_b");
    }
    f.band = Band{b[0], b[1]};
  } else if (data == "sweep") {
    throw InputError(ctx.where() + ": sweep data requires a 'band'");
  }
  if (auto n = ctx.opt<long long>("segment_len")) {
    if (*n < 4) throw InputError(ctx.where() + ": segment_len must be at least 4");
    f.segment_len = static_cast<std::size_t>(*n);
  }
  f.overlap = ctx.opt<double>("overlap").value_or(0.5);
  if (!(f.overlap >= 0.0 && f.overlap < 1.0)) throw InputError(ctx.where() + ": overlap must lie in [0, 1)");
  f.weighting = ctx.opt<bool>("weighting").value_or(true);
  f.points_per_decade = ctx.opt<double>("points_per_decade").value_or(50.0);
  if (!(f.points_per_decade > 0.0)) throw InputError(ctx.where() + ": points_per_decade must be positive");
  f.k_p = ctx.opt<double>("k_p");
  return f;
}

}  // namespace

RunManifest parse_manifest(const json& doc, const fs::path& base_dir, const CredibilityConfig& base,
                           std::string source) {
  const std::string ctx = source.empty() ? std::string("manifest") : "manifest '" + source + "'";
  if (!doc.is_object()) throw InputError(ctx + ": expected a JSON object");

  RunManifest m{std::move(source), base, {}};
  if (doc.contains("config")) {
    try {
      m.config = config_from_json(doc.at("config"), base);
    } catch (const DomainError& e) {
      throw InputError(ctx + ": config: " + e.what());
    }
  }
  if (!doc.contains("tests") || !doc.at("tests").is_array()) {
    throw InputError(ctx + ": missing 'tests' array");
  }

  std::set<std::string> names;
  std::size_t idx = 0;
  for (const auto& entry : doc.at("tests")) {
    ++idx;
    if (!entry.is_object() || !entry.contains("name") || !entry.contains("kind") ||
        !entry.at("name").is_string() || !entry.at("kind").is_string()) {
      throw InputError(ctx + ": test #" + std::to_string(idx) + " needs string fields 'name' and 'kind'");
    }
    TestDescriptor d;
    d.name = entry.at("name").get<std::string>();
    if (d.name.empty()) throw InputError(ctx + ": test #" + std::to_string(idx) + " has an empty name");
    if (!names.insert(d.name).second) {
      throw InputError(ctx + ": duplicate test name '" + d.name + "'");
    }
    const TestKind kind = test_kind_from_string(entry.at("kind").get<std::string>());
    EntryContext ec{entry, base_dir, d.name, d.inputs};
    switch (kind) {
      case TestKind::performance: d.body = decode_performance(ec); break;
      case TestKind::time: d.body = decode_time(ec); break;
      case TestKind::frequency: d.body = decode_frequency(ec); break;
    }
    m.tests.push_back(std::move(d));
  }
  return m;
}

RunManifest load_manifest(const fs::path& path, const CredibilityConfig& base) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest '" + path.string() + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InputError("manifest '" + path.string() + "': " + e.what());
  }
  return parse_manifest(doc, path.parent_path(), base, path.string());
}

}  // namespace simcred
