#pragma once

// Deterministic bisection search for a point with negative right derivative.
//
// Given h on [p, q] with h(p) > h(q), probe h'_+ at p and then at successive
// midpoints. After each fruitless probe keep the half on which h decreases
// faster (2 h(m) < h(l) + h(r) keeps [l, m], otherwise [m, r]).

#include <functional>
#include <memory>

#include "goldstein/objective.hpp"
#include "goldstein/piecewise_linear.hpp"

namespace goldstein {

inline constexpr int kDefaultMaxDepth = 80;

struct Probe {
  double value = 0.0;
  double rderiv = 0.0;
};

// A right-differentiable function on [left, right]. `probe` returns value
// and right derivative together and is what the search counts as one
// evaluation; `value` is used only at the right endpoint.
struct Univariate {
  double left = 0.0;
  double right = 1.0;
  std::function<double(double)> value;
  std::function<Probe(double)> probe;
};

struct SearchOutcome {
  double t_star = 0.0;
  double rderiv_at_t = 0.0;
  int evaluations = 0;
  int bisections = 0;
};

// Retained interval after each bisection, for property checks.
struct BisectStep {
  double l, r, hl, hr;
};
using BisectObserver = std::function<void(const BisectStep&)>;

// Throws InputError unless h(p) > h(q); throws NonSemismoothSuspected when
// the interval width drops below (q - p) * 2^-max_depth.
SearchOutcome bisect(const Univariate& h, int max_depth = kDefaultMaxDepth,
                     const BisectObserver& observer = {});

// h(t) - shift * t for a stored piecewise-linear function.
Univariate as_univariate(std::shared_ptr<const PiecewiseLinear1D> h,
                         double shift = 0.0);

// The objective and counter must outlive the restriction.
//
// Descent restriction h(t) = f(x + (t - delta) ghat) - eps t / 2 on
// [0, delta]. Every probe is one oracle call in direction ghat; the most
// recent response is kept so the caller can read G at the accepted point.
class DescentRestriction {
 public:
  DescentRestriction(const Objective& obj, Vector x, Vector ghat, double delta,
                     double eps, CallCounter& counter);

  const Univariate& univariate() const { return h_; }
  Vector point_at(double t) const;

  // Response of the last probe, and the t it was taken at.
  const OracleResponse& last_response() const { return state_->response; }
  double last_probe_t() const { return state_->t; }

 private:
  struct State {
    Vector x;
    Vector ghat;
    double delta = 0.0;
    double t = 0.0;
    OracleResponse response;
    Vector point_at(double t) const { return x + (t - delta) * ghat; }
  };
  std::shared_ptr<State> state_;
  Univariate h_;
};

DescentRestriction make_descent_h(const Objective& obj, const Vector& x,
                                  const Vector& ghat, double delta, double eps,
                                  CallCounter& counter);

}  // namespace goldstein
