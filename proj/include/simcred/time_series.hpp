#pragma once

#include <span>
#include <string>
#include <vector>

namespace simcred {

// Ordered (t, y) samples. The abscissa is usually time in seconds but any
// strictly increasing independent variable works.
class TimeSeries {
 public:
  TimeSeries() = default;

  // Throws DomainError unless abscissa is strictly increasing, both vectors
  // have the same length >= 2 and every entry is finite.
  TimeSeries(std::vector<double> abscissa, std::vector<double> values,
             std::string label = {}, std::string abscissa_unit = {},
             std::string value_unit = {});

  std::span<const double> abscissa() const { return abscissa_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  double front_time() const { return abscissa_.front(); }
  double back_time() const { return abscissa_.back(); }

  const std::string& label() const { return label_; }
  const std::string& abscissa_unit() const { return abscissa_unit_; }
  const std::string& value_unit() const { return value_unit_; }

  // Linear interpolation; t must lie inside [front_time(), back_time()].
  double interpolate(double t) const;

  // True when consecutive spacings agree with the mean spacing to within
  // rel_tol.
  bool is_uniform(double rel_tol = 1e-6) const;

  // Mean sample spacing (back - front) / (n - 1).
  double mean_step() const;

  // Same series with the values replaced; abscissa and metadata kept.
  TimeSeries with_values(std::vector<double> values) const;

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::vector<double> abscissa_;
  std::vector<double> values_;
  std::string label_;
  std::string abscissa_unit_;
  std::string value_unit_;
};

}  // namespace simcred
