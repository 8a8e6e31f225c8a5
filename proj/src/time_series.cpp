#include "simcred/time_series.hpp"

#include <algorithm>
#include <cmath>

#include "simcred/errors.hpp"

namespace simcred {

TimeSeries::TimeSeries(std::vector<double> abscissa, std::vector<double> values,
                       std::string label, std::string abscissa_unit,
                       std::string value_unit)
    : abscissa_(std::move(abscissa)),
      values_(std::move(values)),
      label_(std::move(label)),
      abscissa_unit_(std::move(abscissa_unit)),
      value_unit_(std::move(value_unit)) {
  if (abscissa_.size() != values_.size()) {
    throw DomainError("time series '" + label_ + "': abscissa and values differ in length");
  }
  if (values_.size() < 2) {
    throw DomainError("time series '" + label_ + "': at least two samples required");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(abscissa_[i]) || !std::isfinite(values_[i])) {
      throw DomainError("time series '" + label_ + "': non-finite entry at index " +
                        std::to_string(i));
    }
    if (i > 0 && !(abscissa_[i] > abscissa_[i - 1])) {
      throw DomainError("time series '" + label_ +
                        "': abscissa not strictly increasing at index " + std::to_string(i));
    }
  }
}

double TimeSeries::interpolate(double t) const {
  if (t < abscissa_.front() || t > abscissa_.back()) {
    throw DomainError("time series '" + label_ + "': interpolation point outside range");
  }
  auto it = std::upper_bound(abscissa_.begin(), abscissa_.end(), t);
  if (it == abscissa_.end()) return values_.back();
  const auto hi = static_cast<std::size_t>(it - abscissa_.begin());
  const std::size_t lo = hi - 1;
  const double frac = (t - abscissa_[lo]) / (abscissa_[hi] - abscissa_[lo]);
  return values_[lo] + frac * (values_[hi] - values_[lo]);
}

double TimeSeries::mean_step() const {
  return (abscissa_.back() - abscissa_.front()) / static_cast<double>(abscissa_.size() - 1);
}

bool TimeSeries::is_uniform(double rel_tol) const {
  const double step = mean_step();
  for (std::size_t i = 1; i < abscissa_.size(); ++i) {
    if (std::abs((abscissa_[i] - abscissa_[i - 1]) - step) > rel_tol * step) return false;
  }
  return true;
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
  return TimeSeries(abscissa_, std::move(values), label_, abscissa_unit_, value_unit_);
}

}  // namespace simcred
