#pragma once

#include <string>

#include "json.hpp"

namespace simcred {

// Aggregation weights for the performance, time-domain and frequency-domain
// categories.
struct CategoryWeights {
  double performance = 1.0 / 3.0;
  double time = 1.0 / 3.0;
  double frequency = 1.0 / 3.0;

  friend bool operator==(const CategoryWeights&, const CategoryWeights&) = default;
};

// User-facing knobs before validation. Every field has the default used when
// a config document omits it.
struct ConfigParams {
  double eta_pass = 0.6;
  double k_p = 0.05;
  CategoryWeights weights{};
  double eps_min = 0.9;
  double eps_co = 0.6;
};

// Validated, immutable assessment configuration.
//
// The scale factor k_e is a pure function of eta_pass and is recomputed on
// every access so the two can never disagree.
class CredibilityConfig {
 public:
  // Defaults: eta_pass 0.6, k_p 0.05, equal weights, eps_min 0.9, eps_co 0.6.
  CredibilityConfig();

  // Throws DomainError on any invariant violation. Weights whose sum is within
  // 1e-12 of one are accepted and rescaled to sum to one.
  explicit CredibilityConfig(const ConfigParams& params);

  // Weights (0.3, 0.3, 0.4), emphasising frequency-domain dynamics.
  static CredibilityConfig dynamics_weighted();

  double eta_pass() const { return eta_pass_; }
  double k_e() const;
  double k_p() const { return k_p_; }
  const CategoryWeights& weights() const { return weights_; }
  double eps_min() const { return eps_min_; }
  double eps_co() const { return eps_co_; }

  ConfigParams params() const;

  // Copy with a different percentage coefficient (per-test overrides).
  CredibilityConfig with_k_p(double k_p) const;

  friend bool operator==(const CredibilityConfig&, const CredibilityConfig&) = default;

 private:
  double eta_pass_;
  double k_p_;
  CategoryWeights weights_;
  double eps_min_;
  double eps_co_;
};

// k_e = eta_pass / sqrt(1 - eta_pass^2). Throws DomainError unless
// 0 < eta_pass < 1.
double scale_factor(double eta_pass);

// Maps an error e >= 0 against a threshold eps > 0 to an index in (0, 1]:
//   eta = k_e * eps / sqrt((k_e * eps)^2 + e^2)
// so that e == eps lands exactly on the passing mark.
double normalize(double error, double threshold, const CredibilityConfig& config);

// JSON form: {"eta_pass", "k_p", "weights": {"p","t","f"}, "eps_min",
// "eps_co"}; every key optional. "preset": "dynamics-weighted" selects the
// (0.3, 0.3, 0.4) weights before explicit keys are applied.
CredibilityConfig config_from_json(const nlohmann::json& doc);
CredibilityConfig config_from_json(const nlohmann::json& doc, const CredibilityConfig& base);
nlohmann::json config_to_json(const CredibilityConfig& config);

// Reads a JSON config file. Throws InputError if unreadable or malformed.
CredibilityConfig load_config(const std::string& path);

}  // namespace simcred
