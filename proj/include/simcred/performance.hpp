#pragma once

#include <optional>
#include <span>
#include <string>

#include "simcred/core_index.hpp"

namespace simcred {

// A scalar performance parameter measured on the experiment and on the
// simulation, in the same unit.
struct PerformanceSample {
  std::string name;
  std::string unit;
  double p_exp = 0.0;
  double p_sim = 0.0;
  std::optional<double> k_p_override;   // replaces config.k_p for this sample
  std::optional<double> eps_override;   // explicit threshold, bypasses the k_p rule

  friend bool operator==(const PerformanceSample&, const PerformanceSample&) = default;
};

// Throws DomainError for non-finite values or non-positive overrides.
void validate(const PerformanceSample& sample);

// |p_exp - p_sim|
double performance_error(const PerformanceSample& sample);

// eps_override if present, else k_p * |p_exp|, falling back to k_p * |p_sim|
// when p_exp is zero. Throws DegenerateError if both values are zero and no
// explicit threshold is given.
double performance_threshold(const PerformanceSample& sample, const CredibilityConfig& config);

double performance_index(const PerformanceSample& sample, const CredibilityConfig& config);

// Summary statistics used to turn stochastic traces into performance
// parameters. stddev is the population form (divides by n).
double sample_mean(std::span<const double> values);
double population_stddev(std::span<const double> values);

}  // namespace simcred
