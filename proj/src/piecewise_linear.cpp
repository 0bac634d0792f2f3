#include "goldstein/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "goldstein/errors.hpp"

namespace goldstein {

void PiecewiseLinear1D::validate_breakpoints(
    const std::vector<double>& breakpoints) {
  if (breakpoints.size() < 2) {
    throw InputError("piecewise-linear function needs at least two breakpoints");
  }
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!std::isfinite(breakpoints[i])) {
      throw InputError("non-finite breakpoint");
    }
    if (i > 0 && !(breakpoints[i - 1] < breakpoints[i])) {
      throw InputError("breakpoints must be strictly increasing (index " +
                       std::to_string(i) + ")");
    }
  }
}

PiecewiseLinear1D PiecewiseLinear1D::from_slopes(std::vector<double> breakpoints,
                                                 std::vector<double> slopes,
                                                 double value_at_left) {
  validate_breakpoints(breakpoints);
  if (slopes.size() + 1 != breakpoints.size()) {
    throw InputError("expected " + std::to_string(breakpoints.size() - 1) +
                     " slopes, got " + std::to_string(slopes.size()));
  }
  if (!std::isfinite(value_at_left) ||
      !std::all_of(slopes.begin(), slopes.end(),
                   [](double s) { return std::isfinite(s); })) {
    throw InputError("non-finite slope or value");
  }
  PiecewiseLinear1D h;
  h.values_.resize(breakpoints.size());
  h.values_[0] = value_at_left;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    h.values_[i + 1] =
        h.values_[i] + slopes[i] * (breakpoints[i + 1] - breakpoints[i]);
  }
  h.breakpoints_ = std::move(breakpoints);
  h.slopes_ = std::move(slopes);
  return h;
}

PiecewiseLinear1D PiecewiseLinear1D::from_knots(std::vector<double> breakpoints,
                                                std::vector<double> values) {
  validate_breakpoints(breakpoints);
  if (values.size() != breakpoints.size()) {
    throw InputError("knot value count must match breakpoint count");
  }
  PiecewiseLinear1D h;
  h.slopes_.resize(breakpoints.size() - 1);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    h.slopes_[i] =
        (values[i + 1] - values[i]) / (breakpoints[i + 1] - breakpoints[i]);
  }
  h.breakpoints_ = std::move(breakpoints);
  h.values_ = std::move(values);
  return h;
}

std::size_t PiecewiseLinear1D::segment_of(double t) const {
  // Segment i covers [t_i, t_{i+1}); the right endpoint belongs to the last.
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  std::size_t i = it == breakpoints_.begin()
                      ? 0
                      : static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return std::min(i, slopes_.size() - 1);
}

double PiecewiseLinear1D::value(double t) const {
  if (t == breakpoints_.back()) return values_.back();
  const std::size_t i = segment_of(t);
  if (t == breakpoints_[i]) return values_[i];
  return values_[i] + slopes_[i] * (t - breakpoints_[i]);
}

double PiecewiseLinear1D::right_derivative(double t) const {
  return slopes_[segment_of(t)];
}

double PiecewiseLinear1D::lipschitz() const {
  double best = 0.0;
  for (double s : slopes_) best = std::max(best, std::abs(s));
  return best;
}

}  // namespace goldstein
