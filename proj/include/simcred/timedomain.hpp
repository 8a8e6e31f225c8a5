#pragma once

#include <cstddef>
#include <vector>

#include "simcred/core_index.hpp"
#include "simcred/time_series.hpp"

namespace simcred {

// Experimental and simulated curves evaluated on one shared grid.
struct AlignedPair {
  std::vector<double> grid;
  std::vector<double> y_exp;
  std::vector<double> y_sim;

  std::size_t size() const { return grid.size(); }
};

// Resamples both curves by linear interpolation onto n_t uniformly spaced
// points spanning the overlap of their abscissa ranges (endpoints included).
// Throws AlignmentError for an empty overlap and DomainError for n_t < 2.
AlignedPair align(const TimeSeries& exp, const TimeSeries& sim, std::size_t n_t);

// Same as above with n_t = number of experimental samples inside the overlap
// (at least 2).
AlignedPair align(const TimeSeries& exp, const TimeSeries& sim);

// Centered moving average. Near the ends the window shrinks symmetrically so
// it stays centered. Throws DomainError for an even window or one longer
// than the series.
TimeSeries smooth(const TimeSeries& series, std::size_t window);

// Root-mean-square pointwise difference over the grid.
double time_domain_error(const AlignedPair& pair);

// k_p times the range of the experimental curve on the grid. Throws
// DegenerateError if that curve is constant.
double time_domain_threshold(const AlignedPair& pair, const CredibilityConfig& config);

double time_domain_index(const AlignedPair& pair, const CredibilityConfig& config);

}  // namespace simcred
