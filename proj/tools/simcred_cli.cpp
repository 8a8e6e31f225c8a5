// simcred: command-line front end for simulation credibility assessment.
//
// Exit codes: 0 gate passed, 1 gate failed, 2 invalid input, 3 internal error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "simcred/core_index.hpp"
#include "simcred/csv_io.hpp"
#include "simcred/demo.hpp"
#include "simcred/errors.hpp"
#include "simcred/manifest.hpp"
#include "simcred/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;

struct OutputOptions {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> formats;
  bool no_weighting = false;
  std::string pin_timestamp;
  bool sequential = false;
};

void add_output_flags(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--config", o.config_path, "Config JSON (falls back to $SIMCRED_CONFIG)");
  cmd->add_option("--out", o.out_dir, "Output directory; report goes to stdout when omitted");
  cmd->add_option("--format", o.formats, "json, md or plotdata (repeatable)")
      ->check(CLI::IsMember({"json", "md", "markdown", "plotdata"}));
  cmd->add_flag("--no-weighting", o.no_weighting, "Disable coherence weighting of Bode errors");
  cmd->add_option("--pin-timestamp", o.pin_timestamp, "Fixed ISO 8601 timestamp for reproducible reports");
  cmd->add_flag("--sequential", o.sequential, "Assess tests one at a time");
}

simcred::CredibilityConfig base_config(const OutputOptions& o) {
  if (!o.config_path.empty()) return simcred::load_config(o.config_path);
  if (const char* env = std::getenv("SIMCRED_CONFIG"); env != nullptr && *env != '\0') {
    return simcred::load_config(env);
  }
  return simcred::CredibilityConfig{};
}

void print_summary(const simcred::AssessmentReport& r, std::ostream& os) {
  const auto& v = r.verdict;
  for (const auto& t : r.tests) {
    os << "  " << simcred::to_string(t.kind) << " " << t.name << ": ";
    if (t.valid) {
      os << "eta = " << simcred::format_number(*t.index) << "\n";
    } else {
      os << "INVALID (" << t.reason << ")\n";
    }
  }
  os << "eta_all = " << simcred::format_number(v.eta_all)
     << (v.gate_passed ? "" : " (not certified)") << "\n"
     << "eta_min = " << simcred::format_number(v.eta_min) << " [" << v.min_source << "]\n"
     << "gate: " << (v.gate_passed ? "passed" : "failed") << "\n";
}

int finish(const simcred::AssessmentRun& run, const OutputOptions& o) {
  std::vector<std::string> formats = o.formats.empty() ? std::vector<std::string>{"json"} : o.formats;
  if (o.out_dir.empty()) {
    for (const auto& f : formats) {
      switch (simcred::report_format_from_string(f)) {
        case simcred::ReportFormat::json: std::cout << simcred::serialize_report(run.report); break;
        case simcred::ReportFormat::markdown: std::cout << simcred::render_markdown(run.report); break;
        case simcred::ReportFormat::plotdata:
          throw simcred::InputError("--format plotdata requires --out");
      }
    }
  } else {
    for (const auto& f : formats) {
      for (const auto& p : simcred::emit_report(run, simcred::report_format_from_string(f), o.out_dir)) {
        std::cerr << "wrote " << p.string() << "\n";
      }
    }
    print_summary(run.report, std::cout);
  }
  return run.report.verdict.gate_passed ? kExitPass : kExitFail;
}

simcred::RunOptions run_options(const OutputOptions& o) {
  simcred::RunOptions opts;
  opts.force_no_weighting = o.no_weighting;
  if (!o.pin_timestamp.empty()) opts.pinned_timestamp = o.pin_timestamp;
  opts.parallel = !o.sequential;
  return opts;
}

int run_doc(const json& doc, const OutputOptions& o) {
  const auto manifest = simcred::parse_manifest(doc, fs::current_path(), base_config(o), "<command line>");
  return finish(simcred::run_assessment(manifest, run_options(o)), o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantitative credibility assessment of simulations against experiment data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", simcred::kToolVersion);

  OutputOptions out;

  std::string manifest_path;
  auto* assess = app.add_subcommand("assess", "Assess every test listed in a manifest");
  assess->add_option("manifest", manifest_path, "Manifest JSON")->required();
  add_output_flags(assess, out);

  double p_exp = 0.0;
  double p_sim = 0.0;
  std::string unit;
  std::optional<double> k_p;
  std::optional<double> eps;
  std::string samples;
  std::string name = "test";
  auto* perf = app.add_subcommand("perf", "Assess performance parameters");
  auto* p_exp_opt = perf->add_option("--p-exp", p_exp, "Experimental value");
  auto* p_sim_opt = perf->add_option("--p-sim", p_sim, "Simulated value");
  perf->add_option("--unit", unit, "Unit label");
  perf->add_option("--eps", eps, "Explicit threshold");
  auto* samples_opt = perf->add_option("--samples", samples, "CSV name,unit,p_exp,p_sim[,k_p][,eps]");
  p_exp_opt->needs(p_sim_opt);
  p_sim_opt->needs(p_exp_opt);
  samples_opt->excludes(p_exp_opt)->excludes(p_sim_opt);

  std::string exp_path;
  std::string sim_path;
  std::optional<long long> n_t;
  long long smooth = 1;
  auto* time = app.add_subcommand("time", "Assess one time-domain curve pair");
  time->add_option("--exp", exp_path, "Experimental curve CSV t,y")->required();
  time->add_option("--sim", sim_path, "Simulated curve CSV t,y")->required();
  time->add_option("--n-t", n_t, "Number of comparison points");
  time->add_option("--smooth", smooth, "Odd moving-average window (1 = off)");

  std::vector<double> band;
  bool bode = false;
  std::optional<long long> segment_len;
  double overlap = 0.5;
  double ppd = 50.0;
  auto* freq = app.add_subcommand("freq", "Assess one sweep-test pair");
  freq->add_option("--exp", exp_path, "Experimental CSV (t,x,y sweep, or Bode with --bode)")->required();
  freq->add_option("--sim", sim_path, "Simulated CSV")->required();
  freq->add_option("--band", band, "Band f_a f_b in rad/s")->expected(2);
  freq->add_flag("--bode", bode, "Inputs are f_rad_s,mag_db,phase_deg,coherence CSVs");
  freq->add_option("--segment-len", segment_len, "Samples per averaged segment");
  freq->add_option("--overlap", overlap, "Segment overlap fraction");
  freq->add_option("--points-per-decade", ppd, "Common grid density");

  for (auto* cmd : {perf, time, freq}) {
    cmd->add_option("--name", name, "Test name");
    cmd->add_option("--k-p", k_p, "Percentage coefficient for the threshold");
    add_output_flags(cmd, out);
  }

  std::string gen_dir;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("gen", "Write a synthetic demo dataset and manifest");
  gen->add_option("--out", gen_dir, "Output directory")->required();
  gen->add_option("--seed", seed, "Noise seed");

  std::string report_path;
  std::vector<std::string> report_formats;
  std::string report_out;
  auto* report = app.add_subcommand("report", "Re-render a JSON report");
  report->add_option("report", report_path, "report.json")->required();
  report->add_option("--format", report_formats, "json or md (repeatable)")
      ->check(CLI::IsMember({"json", "md", "markdown"}));
  report->add_option("--out", report_out, "Output directory; stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInvalid;
  }

  try {
    if (*assess) {
      const auto manifest = simcred::load_manifest(manifest_path, base_config(out));
      return finish(simcred::run_assessment(manifest, run_options(out)), out);
    }
    if (*perf) {
      json tests = json::array();
      if (!samples.empty()) {
        for (const auto& s : simcred::read_performance_csv(samples)) {
          json t = {{"kind", "performance"}, {"name", s.name}, {"samples", samples}};
          if (k_p) t["k_p"] = *k_p;
          tests.push_back(t);
        }
      } else if (*p_exp_opt) {
        json t = {{"kind", "performance"}, {"name", name}, {"p_exp", p_exp}, {"p_sim", p_sim}, {"unit", unit}};
        if (k_p) t["k_p"] = *k_p;
        if (eps) t["eps"] = *eps;
        tests.push_back(t);
      } else {
        throw simcred::InputError("perf: give --p-exp/--p-sim or --samples");
      }
      return run_doc({{"tests", tests}}, out);
    }
    if (*time) {
      json t = {{"kind", "time"}, {"name", name}, {"exp", exp_path}, {"sim", sim_path}, {"smooth_window", smooth}};
      if (n_t) t["n_t"] = *n_t;
      if (k_p) t["k_p"] = *k_p;
      return run_doc({{"tests", {t}}}, out);
    }
    if (*freq) {
      json t = {{"kind", "frequency"}, {"name", name},       {"exp", exp_path},
                {"sim", sim_path},     {"overlap", overlap}, {"points_per_decade", ppd},
                {"data", bode ? "bode" : "sweep"}};
      if (!band.empty()) t["band"] = band;
      if (segment_len) t["segment_len"] = *segment_len;
      if (k_p) t["k_p"] = *k_p;
      return run_doc({{"tests", {t}}}, out);
    }
    if (*gen) {
      const fs::path manifest = simcred::write_demo_dataset(gen_dir, seed);
      std::cout << manifest.string() << "\n";
      return kExitPass;
    }
    if (*report) {
      std::ifstream in(report_path);
      if (!in) throw simcred::InputError("cannot open '" + report_path + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      const auto parsed = simcred::parse_report(buf.str());
      const auto formats = report_formats.empty() ? std::vector<std::string>{"md"} : report_formats;
      for (const auto& f : formats) {
        const auto fmt = simcred::report_format_from_string(f);
        if (report_out.empty()) {
          std::cout << (fmt == simcred::ReportFormat::json ? simcred::serialize_report(parsed)
                                                           : simcred::render_markdown(parsed));
        } else {
          for (const auto& p : simcred::emit_report(parsed, fmt, report_out)) {
            std::cerr << "wrote " << p.string() << "\n";
          }
        }
      }
      return parsed.verdict.gate_passed ? kExitPass : kExitFail;
    }
  } catch (const simcred::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const simcred::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const simcred::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
