#include "simcred/core_index.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "simcred/errors.hpp"

namespace simcred {

namespace {

constexpr double kWeightSumTol = 1e-12;

void require_unit_interval(double value, const char* name, bool allow_one) {
  const bool ok = value > 0.0 && (allow_one ? value <= 1.0 : value < 1.0);
  if (!ok || !std::isfinite(value)) {
    throw DomainError(std::string("config: ") + name + " must lie in (0, 1" +
                      (allow_one ? "]" : ")") + ", got " + std::to_string(value));
  }
}

CategoryWeights checked_weights(const CategoryWeights& w) {
  for (double a : {w.performance, w.time, w.frequency}) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw DomainError("config: aggregation weights must lie in [0, 1]");
    }
  }
  const double sum = w.performance + w.time + w.frequency;
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw DomainError("config: aggregation weights must sum to 1, got " + std::to_string(sum));
  }
  // Rescale until the floating-point sum is exactly one; weights already
  // summing to one pass through untouched, which keeps reloads bit-stable.
  CategoryWeights out = w;
  for (int pass = 0; pass < 4; ++pass) {
    const double s = out.performance + out.time + out.frequency;
    if (s == 1.0) break;
    out = {out.performance / s, out.time / s, out.frequency / s};
  }
  return out;
}

}  // namespace

double scale_factor(double eta_pass) {
  if (!(eta_pass > 0.0 && eta_pass < 1.0)) {
    throw DomainError("eta_pass must lie in (0, 1), got " + std::to_string(eta_pass));
  }
  return eta_pass / std::sqrt(1.0 - eta_pass * eta_pass);
}

CredibilityConfig::CredibilityConfig() : CredibilityConfig(ConfigParams{}) {}

CredibilityConfig::CredibilityConfig(const ConfigParams& p)
    : eta_pass_(p.eta_pass),
      k_p_(p.k_p),
      weights_(checked_weights(p.weights)),
      eps_min_(p.eps_min),
      eps_co_(p.eps_co) {
  require_unit_interval(eta_pass_, "eta_pass", false);
  if (!(k_p_ > 0.0) || !std::isfinite(k_p_)) {
    throw DomainError("config: k_p must be positive, got " + std::to_string(k_p_));
  }
  require_unit_interval(eps_min_, "eps_min", true);
  require_unit_interval(eps_co_, "eps_co", true);
}

CredibilityConfig CredibilityConfig::dynamics_weighted() {
  ConfigParams p;
  p.weights = {0.3, 0.3, 0.4};
  return CredibilityConfig(p);
}

double CredibilityConfig::k_e() const { return scale_factor(eta_pass_); }

ConfigParams CredibilityConfig::params() const {
  return {eta_pass_, k_p_, weights_, eps_min_, eps_co_};
}

CredibilityConfig CredibilityConfig::with_k_p(double k_p) const {
  ConfigParams p = params();
  p.k_p = k_p;
  return CredibilityConfig(p);
}

double normalize(double error, double threshold, const CredibilityConfig& config) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw DomainError("normalize: threshold must be strictly positive, got " +
                      std::to_string(threshold));
  }
  if (!(error >= 0.0) || !std::isfinite(error)) {
    throw DomainError("normalize: error must be non-negative, got " + std::to_string(error));
  }
  const double scaled = config.k_e() * threshold;
  // hypot avoids overflow/underflow for extreme ratios
  return scaled / std::hypot(scaled, error);
}

CredibilityConfig config_from_json(const nlohmann::json& doc) {
  return config_from_json(doc, CredibilityConfig{});
}

CredibilityConfig config_from_json(const nlohmann::json& doc, const CredibilityConfig& base) {
  if (!doc.is_object()) throw InputError("config: expected a JSON object");
  ConfigParams p = base.params();
  try {
    if (doc.contains("preset")) {
      const auto preset = doc.at("preset").get<std::string>();
      if (preset == "dynamics-weighted") {
        p.weights = {0.3, 0.3, 0.4};
      } else if (preset == "equal") {
        p.weights = {};
      } else {
        throw InputError("config: unknown preset '" + preset + "'");
      }
    }
    if (doc.contains("eta_pass")) p.eta_pass = doc.at("eta_pass").get<double>();
    if (doc.contains("k_p")) p.k_p = doc.at("k_p").get<double>();
    if (doc.contains("eps_min")) p.eps_min = doc.at("eps_min").get<double>();
    if (doc.contains("eps_co")) p.eps_co = doc.at("eps_co").get<double>();
    if (doc.contains("weights")) {
      const auto& w = doc.at("weights");
      if (!w.is_object()) throw InputError("config: 'weights' must be an object {p, t, f}");
      if (w.contains("p")) p.weights.performance = w.at("p").get<double>();
      if (w.contains("t")) p.weights.time = w.at("t").get<double>();
      if (w.contains("f")) p.weights.frequency = w.at("f").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  return CredibilityConfig(p);
}

nlohmann::json config_to_json(const CredibilityConfig& config) {
  return {
      {"eta_pass", config.eta_pass()},
      {"k_e", config.k_e()},
      {"k_p", config.k_p()},
      {"weights",
       {{"p", config.weights().performance},
        {"t", config.weights().time},
        {"f", config.weights().frequency}}},
      {"eps_min", config.eps_min()},
      {"eps_co", config.eps_co()},
  };
}

CredibilityConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("config '" + path + "': " + e.what());
  }
  return config_from_json(doc);
}

}  // namespace simcred
