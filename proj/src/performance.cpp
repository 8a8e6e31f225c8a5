#include "simcred/performance.hpp"

#include <cmath>

#include "simcred/errors.hpp"

namespace simcred {

void validate(const PerformanceSample& s) {
  if (!std::isfinite(s.p_exp) || !std::isfinite(s.p_sim)) {
    throw DomainError("performance sample '" + s.name + "': values must be finite");
  }
  if (s.k_p_override && !(*s.k_p_override > 0.0 && std::isfinite(*s.k_p_override))) {
    throw DomainError("performance sample '" + s.name + "': k_p override must be positive");
  }
  if (s.eps_override && !(*s.eps_override > 0.0 && std::isfinite(*s.eps_override))) {
    throw DomainError("performance sample '" + s.name + "': threshold override must be positive");
  }
}

double performance_error(const PerformanceSample& s) { return std::abs(s.p_exp - s.p_sim); }

double performance_threshold(const PerformanceSample& s, const CredibilityConfig& config) {
  validate(s);
  if (s.eps_override) return *s.eps_override;
  const double k_p = s.k_p_override.value_or(config.k_p());
  if (s.p_exp != 0.0) return k_p * std::abs(s.p_exp);
  if (s.p_sim != 0.0) return k_p * std::abs(s.p_sim);
  throw DegenerateError("performance sample '" + s.name +
                        "': experimental and simulated values are both zero; "
                        "supply an explicit threshold");
}

double performance_index(const PerformanceSample& s, const CredibilityConfig& config) {
  return normalize(performance_error(s), performance_threshold(s, config), config);
}

double sample_mean(std::span<const double> values) {
  if (values.empty()) throw DomainError("mean of an empty sequence");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double population_stddev(std::span<const double> values) {
  const double mean = sample_mean(values);
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / static_cast<double>(values.size()));
}

}  // namespace simcred
