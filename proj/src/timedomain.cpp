#include "simcred/timedomain.hpp"

#include <algorithm>
#include <cmath>

#include "simcred/errors.hpp"

namespace simcred {

namespace {

struct Overlap {
  double lo;
  double hi;
};

Overlap overlap_of(const TimeSeries& a, const TimeSeries& b) {
  const Overlap o{std::max(a.front_time(), b.front_time()), std::min(a.back_time(), b.back_time())};
  if (!(o.hi > o.lo)) {
    throw AlignmentError("align: series '" + a.label() + "' and '" + b.label() +
                         "' do not overlap on an interval of positive length");
  }
  return o;
}

void check_pair(const AlignedPair& pair) {
  if (pair.grid.size() < 2 || pair.y_exp.size() != pair.grid.size() ||
      pair.y_sim.size() != pair.grid.size()) {
    throw DomainError("aligned pair: grid and curves must share a length of at least 2");
  }
}

}  // namespace

AlignedPair align(const TimeSeries& exp, const TimeSeries& sim, std::size_t n_t) {
  if (n_t < 2) throw DomainError("align: n_t must be at least 2");
  const Overlap o = overlap_of(exp, sim);

  AlignedPair pair;
  pair.grid.resize(n_t);
  pair.y_exp.resize(n_t);
  pair.y_sim.resize(n_t);
  const double step = (o.hi - o.lo) / static_cast<double>(n_t - 1);
  for (std::size_t i = 0; i < n_t; ++i) {
    // pin the last point so rounding never leaves the overlap
    const double t = (i + 1 == n_t) ? o.hi : o.lo + step * static_cast<double>(i);
    pair.grid[i] = t;
    pair.y_exp[i] = exp.interpolate(t);
    pair.y_sim[i] = sim.interpolate(t);
  }
  return pair;
}

AlignedPair align(const TimeSeries& exp, const TimeSeries& sim) {
  const Overlap o = overlap_of(exp, sim);
  const auto t = exp.abscissa();
  const auto inside = std::count_if(t.begin(), t.end(), [&](double v) { return v >= o.lo && v <= o.hi; });
  return align(exp, sim, std::max<std::size_t>(2, static_cast<std::size_t>(inside)));
}

TimeSeries smooth(const TimeSeries& series, std::size_t window) {
  if (window == 0 || window % 2 == 0) {
    throw DomainError("smooth: window must be a positive odd count");
  }
  if (window > series.size()) throw DomainError("smooth: window longer than the series");
  if (window == 1) return series;

  const auto y = series.values();
  const std::size_t n = y.size();
  const std::size_t half = window / 2;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t h = std::min({half, i, n - 1 - i});
    double sum = 0.0;
    for (std::size_t j = i - h; j <= i + h; ++j) sum += y[j];
    out[i] = sum / static_cast<double>(2 * h + 1);
  }
  return series.with_values(std::move(out));
}

double time_domain_error(const AlignedPair& pair) {
  check_pair(pair);
  double acc = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const double d = pair.y_exp[i] - pair.y_sim[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(pair.size()));
}

double time_domain_threshold(const AlignedPair& pair, const CredibilityConfig& config) {
  check_pair(pair);
  const auto [lo, hi] = std::minmax_element(pair.y_exp.begin(), pair.y_exp.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) {
    throw DegenerateError("time-domain threshold: experimental curve is constant");
  }
  return config.k_p() * range;
}

double time_domain_index(const AlignedPair& pair, const CredibilityConfig& config) {
  return normalize(time_domain_error(pair), time_domain_threshold(pair, config), config);
}

}  // namespace simcred
