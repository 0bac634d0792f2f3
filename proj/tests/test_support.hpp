#pragma once

// Builders, random generators and independent oracles shared by the unit
// and acceptance suites. Nothing here calls the code paths it is used to
// check.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <vector>

#include "goldstein/objective.hpp"
#include "goldstein/piecewise_linear.hpp"
#include "goldstein/random.hpp"

namespace goldstein::testing {

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline AffinePiece piece(std::initializer_list<double> a, double beta = 0.0) {
  return {vec(a), beta};
}

// sign * |x_k| in R^n.
inline SignedMaxAffine abs_term(int n, int k, int sign = 1, double scale = 1.0) {
  SignedMaxAffine term{sign, {}};
  Vector a = Vector::Zero(n);
  a[k] = scale;
  term.pieces.push_back({a, 0.0});
  term.pieces.push_back({-a, 0.0});
  return term;
}

inline Objective linear_objective(const Vector& c) {
  return Objective(static_cast<int>(c.size()), Matrix(), c, {});
}

inline Objective half_norm_squared(int n) {
  return Objective(n, Matrix::Identity(n, n), Vector(), {});
}

inline SignedMaxAffine random_term(Rng& rng, int n, int sign, int pieces,
                                   double slope_scale) {
  SignedMaxAffine term{sign, {}};
  for (int i = 0; i < pieces; ++i) {
    term.pieces.push_back({slope_scale * rng.box(n, 1.0), rng.uniform(-1.0, 1.0)});
  }
  return term;
}

// Mixed-sign max-affine objective, optionally with a random symmetric Q.
inline Objective random_objective(Rng& rng, int n, bool with_quadratic) {
  std::vector<SignedMaxAffine> terms;
  const int count = 1 + static_cast<int>(rng.below(4));
  for (int j = 0; j < count; ++j) {
    terms.push_back(random_term(rng, n, rng.uniform() < 0.5 ? 1 : -1,
                                1 + static_cast<int>(rng.below(5)), 1.0));
  }
  Matrix q;
  if (with_quadratic) {
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) m(i, k) = rng.uniform(-1.0, 1.0);
    }
    q = 0.5 * (m + m.transpose());
  }
  return Objective(n, q, rng.box(n, 0.5), std::move(terms));
}

// Random piecewise-linear function on [0, length] with m interior kinks and
// slopes in [-slope_bound, slope_bound].
inline PiecewiseLinear1D random_piecewise_linear(Rng& rng, int m,
                                                 double slope_bound,
                                                 double length = 1.0) {
  std::vector<double> t{0.0};
  for (int i = 0; i < m; ++i) t.push_back(rng.uniform(0.0, length));
  t.push_back(length);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  std::vector<double> g;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    g.push_back(rng.uniform(-slope_bound, slope_bound));
  }
  return PiecewiseLinear1D::from_slopes(std::move(t), std::move(g),
                                        rng.uniform(-1.0, 1.0));
}

// Same, but rejected and re-drawn (by reflection) until h(p) > h(q).
inline PiecewiseLinear1D random_decreasing_piecewise_linear(Rng& rng, int m,
                                                            double slope_bound) {
  for (;;) {
    PiecewiseLinear1D h = random_piecewise_linear(rng, m, slope_bound);
    if (h.value(h.left()) > h.value(h.right())) return h;
    std::vector<double> neg = h.slopes();
    for (double& s : neg) s = -s;
    PiecewiseLinear1D flipped =
        PiecewiseLinear1D::from_slopes(h.breakpoints(), neg, h.value_at_left());
    if (flipped.value(flipped.left()) > flipped.value(flipped.right())) return flipped;
  }
}

// Convex (nondecreasing slopes) with h(p) > h(q).
inline PiecewiseLinear1D random_convex_decreasing(Rng& rng, int m) {
  for (;;) {
    PiecewiseLinear1D h = random_piecewise_linear(rng, m, 5.0);
    std::vector<double> g = h.slopes();
    std::sort(g.begin(), g.end());
    PiecewiseLinear1D convex =
        PiecewiseLinear1D::from_slopes(h.breakpoints(), g, 0.0);
    if (convex.value(convex.left()) > convex.value(convex.right())) return convex;
  }
}

struct KnownMinimum {
  Objective objective;
  Vector minimizer;
  double min_value;
};

// f(x) = K |x - x*|_inf + C(x) - N(x) with C >= 0 convex, C(x*) = 0, N
// max-affine with slopes bounded by L_N and K >= sqrt(n) L_N, so that
// f(x) - f(x*) >= (K - sqrt(n) L_N) |x - x*|_inf >= 0.
inline KnownMinimum random_known_minimum(Rng& rng, int n) {
  const Vector center = rng.box(n, 1.0);
  std::vector<SignedMaxAffine> terms;

  SignedMaxAffine concave = random_term(rng, n, -1, 2 + static_cast<int>(rng.below(4)), 1.0);
  double slope_bound = 0.0;
  for (const auto& p : concave.pieces) slope_bound = std::max(slope_bound, p.a.norm());
  const double k = std::sqrt(static_cast<double>(n)) * slope_bound * rng.uniform(1.0, 1.5);

  SignedMaxAffine box{1, {}};
  for (int i = 0; i < n; ++i) {
    for (double s : {1.0, -1.0}) {
      Vector a = Vector::Zero(n);
      a[i] = s * k;
      box.pieces.push_back({a, -a.dot(center)});
    }
  }
  terms.push_back(std::move(box));

  SignedMaxAffine convex{1, {{Vector::Zero(n), 0.0}}};
  const int extra = static_cast<int>(rng.below(4));
  for (int i = 0; i < extra; ++i) {
    const Vector c = rng.box(n, 1.0);
    convex.pieces.push_back({c, -c.dot(center) - rng.uniform(0.0, 0.5)});
  }
  terms.push_back(std::move(convex));

  double n_at_center = -std::numeric_limits<double>::infinity();
  for (const auto& p : concave.pieces) {
    n_at_center = std::max(n_at_center, p.a.dot(center) + p.beta);
  }
  terms.push_back(std::move(concave));

  Objective f(n, Matrix(), Vector(), std::move(terms));
  return {std::move(f), center, -n_at_center};
}

// One-sided difference quotient.
inline double difference_quotient(const Objective& obj, const Vector& x,
                                  const Vector& e, double t,
                                  double (*f)(const Objective&, const Vector&)) {
  return (f(obj, x + t * e) - f(obj, x)) / t;
}

}  // namespace goldstein::testing
