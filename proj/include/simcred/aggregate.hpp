#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simcred/core_index.hpp"

namespace simcred {

struct NamedIndex {
  std::string name;
  double index = 0.0;

  friend bool operator==(const NamedIndex&, const NamedIndex&) = default;
};

// Per-test indices grouped by category.
struct AssessmentSet {
  std::vector<NamedIndex> perf_indices;
  std::vector<NamedIndex> time_indices;
  std::vector<NamedIndex> freq_indices;

  bool empty() const { return perf_indices.empty() && time_indices.empty() && freq_indices.empty(); }
};

struct CategoryAverages {
  std::optional<double> performance;
  std::optional<double> time;
  std::optional<double> frequency;

  friend bool operator==(const CategoryAverages&, const CategoryAverages&) = default;
};

struct Verdict {
  CategoryAverages averages;
  CategoryWeights effective_weights;  // after redistributing absent categories
  double eta_all = 0.0;
  double eta_min = 0.0;
  std::string min_source;
  bool gate_passed = false;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

// Root-mean-square of the indices. Throws DomainError if empty or any entry
// lies outside (0, 1].
double category_average(std::span<const double> indices);
double category_average(std::span<const NamedIndex> indices);

// Weights with the mass of absent categories spread proportionally over the
// present ones. Falls back to equal shares if every present category has
// zero weight. Throws DomainError if no category is present.
CategoryWeights effective_weights(const CategoryAverages& averages, const CredibilityConfig& config);

// sqrt(sum alpha_c * avg_c^2) over present categories.
double overall_index(const CategoryAverages& averages, const CredibilityConfig& config);

// Smallest index over all categories; ties resolve to the first occurrence in
// performance, time, frequency order. Throws DomainError for an empty set.
NamedIndex minimum_index(const AssessmentSet& set);

bool gate(const Verdict& verdict, const CredibilityConfig& config);

// Category averages, overall index, minimum index and gate in one pass.
Verdict aggregate(const AssessmentSet& set, const CredibilityConfig& config);

}  // namespace simcred
