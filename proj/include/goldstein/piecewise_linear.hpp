#pragma once

#include <vector>

namespace goldstein {

// Continuous piecewise-linear h on [t_0, t_{m+1}] with slope g_i on
// (t_i, t_{i+1}). Knot values are stored alongside the slopes so that
// functions built from knot data reproduce those values exactly.
class PiecewiseLinear1D {
 public:
  // breakpoints t_0 < ... < t_{m+1}; slopes g_0 ... g_m.
  static PiecewiseLinear1D from_slopes(std::vector<double> breakpoints,
                                       std::vector<double> slopes,
                                       double value_at_left);

  // Linear interpolation through (t_i, h_i).
  static PiecewiseLinear1D from_knots(std::vector<double> breakpoints,
                                      std::vector<double> values);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& slopes() const { return slopes_; }
  const std::vector<double>& knot_values() const { return values_; }
  double value_at_left() const { return values_.front(); }

  double left() const { return breakpoints_.front(); }
  double right() const { return breakpoints_.back(); }

  // Number of interior breakpoints m.
  int interior_breakpoints() const {
    return static_cast<int>(breakpoints_.size()) - 2;
  }

  double value(double t) const;

  // h'_+(t) for t in [left, right).
  double right_derivative(double t) const;

  // Largest |g_i|.
  double lipschitz() const;

 private:
  PiecewiseLinear1D() = default;
  static void validate_breakpoints(const std::vector<double>& breakpoints);
  std::size_t segment_of(double t) const;

  std::vector<double> breakpoints_;
  std::vector<double> slopes_;
  std::vector<double> values_;
};

}  // namespace goldstein
