#include "simcred/aggregate.hpp"

#include <cmath>

#include "simcred/errors.hpp"

namespace simcred {

namespace {

void require_index(double v) {
  if (!(v > 0.0 && v <= 1.0)) {
    throw DomainError("credibility index outside (0, 1]: " + std::to_string(v));
  }
}

std::optional<double> average_or_none(const std::vector<NamedIndex>& v) {
  if (v.empty()) return std::nullopt;
  return category_average(std::span<const NamedIndex>(v));
}

}  // namespace

double category_average(std::span<const double> indices) {
  if (indices.empty()) throw DomainError("category average of an empty set");
  double acc = 0.0;
  for (double v : indices) {
    require_index(v);
    acc += v * v;
  }
  return std::sqrt(acc / static_cast<double>(indices.size()));
}

double category_average(std::span<const NamedIndex> indices) {
  std::vector<double> values;
  values.reserve(indices.size());
  for (const auto& n : indices) values.push_back(n.index);
  return category_average(std::span<const double>(values));
}

CategoryWeights effective_weights(const CategoryAverages& avg, const CredibilityConfig& config) {
  const CategoryWeights& w = config.weights();
  const double p = avg.performance ? w.performance : 0.0;
  const double t = avg.time ? w.time : 0.0;
  const double f = avg.frequency ? w.frequency : 0.0;
  const double present = p + t + f;
  if (present > 0.0) return {p / present, t / present, f / present};

  const double count = (avg.performance ? 1.0 : 0.0) + (avg.time ? 1.0 : 0.0) + (avg.frequency ? 1.0 : 0.0);
  if (count == 0.0) throw DomainError("overall index: no category holds any valid test");
  return {avg.performance ? 1.0 / count : 0.0, avg.time ? 1.0 / count : 0.0,
          avg.frequency ? 1.0 / count : 0.0};
}

double overall_index(const CategoryAverages& avg, const CredibilityConfig& config) {
  const CategoryWeights w = effective_weights(avg, config);
  double acc = 0.0;
  if (avg.performance) acc += w.performance * *avg.performance * *avg.performance;
  if (avg.time) acc += w.time * *avg.time * *avg.time;
  if (avg.frequency) acc += w.frequency * *avg.frequency * *avg.frequency;
  return std::sqrt(acc);
}

NamedIndex minimum_index(const AssessmentSet& set) {
  if (set.empty()) throw DomainError("minimum index of an empty assessment set");
  const NamedIndex* best = nullptr;
  for (const auto* group : {&set.perf_indices, &set.time_indices, &set.freq_indices}) {
    for (const auto& n : *group) {
      require_index(n.index);
      if (best == nullptr || n.index < best->index) best = &n;
    }
  }
  return *best;
}

bool gate(const Verdict& verdict, const CredibilityConfig& config) {
  return verdict.eta_min >= config.eps_min();
}

Verdict aggregate(const AssessmentSet& set, const CredibilityConfig& config) {
  Verdict v;
  v.averages = {average_or_none(set.perf_indices), average_or_none(set.time_indices),
                average_or_none(set.freq_indices)};
  v.effective_weights = effective_weights(v.averages, config);
  v.eta_all = overall_index(v.averages, config);
  const NamedIndex worst = minimum_index(set);
  v.eta_min = worst.index;
  v.min_source = worst.name;
  v.gate_passed = gate(v, config);
  return v;
}

}  // namespace simcred
