#include "goldstein/line_search.hpp"

#include <cmath>

#include "goldstein/errors.hpp"

namespace goldstein {

SearchOutcome bisect(const Univariate& h, int max_depth,
                     const BisectObserver& observer) {
  const double p = h.left;
  const double q = h.right;
  if (!(p < q)) throw InputError("bisect: need p < q");
  if (max_depth < 1) throw InputError("bisect: max_depth must be positive");

  SearchOutcome out;
  const double hq = h.value(q);
  const Probe at_p = h.probe(p);
  out.evaluations = 1;
  if (!(at_p.value > hq)) throw InputError("bisect: need h(p) > h(q)");
  if (at_p.rderiv < 0) {
    out.t_star = p;
    out.rderiv_at_t = at_p.rderiv;
    return out;
  }

  const double min_width = std::ldexp(q - p, -max_depth);
  double l = p, r = q;
  double hl = at_p.value, hr = hq;
  for (;;) {
    const double m = 0.5 * (l + r);
    if (r - l < min_width || !(l < m && m < r)) {
      throw NonSemismoothSuspected(l, r, out.evaluations);
    }
    const Probe at_m = h.probe(m);
    ++out.evaluations;
    if (at_m.rderiv < 0) {
      out.t_star = m;
      out.rderiv_at_t = at_m.rderiv;
      return out;
    }
    if (2.0 * at_m.value < hl + hr) {
      r = m;
      hr = at_m.value;
    } else {
      l = m;
      hl = at_m.value;
    }
    ++out.bisections;
    if (observer) observer({l, r, hl, hr});
  }
}

Univariate as_univariate(std::shared_ptr<const PiecewiseLinear1D> h,
                         double shift) {
  Univariate u;
  u.left = h->left();
  u.right = h->right();
  u.value = [h, shift](double t) { return h->value(t) - shift * t; };
  u.probe = [h, shift](double t) {
    return Probe{h->value(t) - shift * t, h->right_derivative(t) - shift};
  };
  return u;
}

DescentRestriction::DescentRestriction(const Objective& obj, Vector x,
                                       Vector ghat, double delta, double eps,
                                       CallCounter& counter)
    : state_(std::make_shared<State>()) {
  if (!(delta > 0) || !(eps > 0)) {
    throw InputError("descent restriction: delta and eps must be positive");
  }
  if (ghat.size() != obj.dim() || x.size() != obj.dim()) {
    throw InputError("descent restriction: dimension mismatch");
  }
  if (std::abs(ghat.norm() - 1.0) > 1e-12) {
    throw InputError("descent restriction: ghat must be a unit vector");
  }
  state_->x = std::move(x);
  state_->ghat = std::move(ghat);
  state_->delta = delta;

  const Objective* f = &obj;
  CallCounter* calls = &counter;
  auto state = state_;
  h_.left = 0.0;
  h_.right = delta;
  h_.value = [f, calls, state, eps](double t) {
    return eval(*f, state->point_at(t), *calls) - 0.5 * eps * t;
  };
  h_.probe = [f, calls, state, eps](double t) {
    state->t = t;
    state->response = oracle_query(*f, state->point_at(t), state->ghat, *calls);
    return Probe{state->response.value - 0.5 * eps * t,
                 state->response.subgrad.dot(state->ghat) - 0.5 * eps};
  };
}

Vector DescentRestriction::point_at(double t) const {
  return state_->point_at(t);
}

DescentRestriction make_descent_h(const Objective& obj, const Vector& x,
                                  const Vector& ghat, double delta, double eps,
                                  CallCounter& counter) {
  return DescentRestriction(obj, x, ghat, delta, eps, counter);
}

}  // namespace goldstein
