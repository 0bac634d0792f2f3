#pragma once

// Concave deviation of univariate restrictions and bounds on the
// nonconvexity modulus Lambda(delta) of an objective.
//
// For h difference-of-convex on [p, q] the concave deviation equals half the
// negative variation (D^2 h)^-(p, q) of its distributional second derivative.

#include <cstdint>
#include <vector>

#include "goldstein/objective.hpp"
#include "goldstein/piecewise_linear.hpp"

namespace goldstein {

struct MeasureAtom {
  double location = 0.0;
  double mass = 0.0;
};

// Constant Lebesgue density plus point masses.
struct SignedAtomicMeasure {
  double lebesgue_density = 0.0;
  std::vector<MeasureAtom> atoms;
};

SignedAtomicMeasure second_derivative(const PiecewiseLinear1D& h,
                                      double quad_density = 0.0);

// 0.5 * (D^2 h)^-(p, q). Density and atoms have disjoint supports so the
// Hahn decomposition splits componentwise.
double concave_deviation(const SignedAtomicMeasure& measure, double p,
                         double q);

// Direct minimization of the Lipschitz constant of a convexifying
// perturbation over nondecreasing slope chains. Kept independent of the
// measure formula.
double concave_deviation_bruteforce(const PiecewiseLinear1D& h);

struct SegmentRestriction {
  PiecewiseLinear1D h;  // piecewise-linear part, t in [0, delta]
  double quad_density = 0.0;  // w'Qw
};

// Restriction t -> f(z + t w) on [0, delta] split into its piecewise-linear
// part and the quadratic curvature along w.
SegmentRestriction restrict_to_segment(const Objective& obj, const Vector& z,
                                       const Vector& w, double delta);

struct Segment {
  Vector start;
  Vector direction;  // unit
};

// Deterministic segment for sample `index` of the stream keyed by `seed`.
Segment sample_segment(const Objective& obj, double delta, std::uint64_t seed,
                       std::uint64_t index);

double segment_deviation(const Objective& obj, const Segment& segment,
                         double delta);

// max over samples of segment_deviation. Serial reference and OpenMP kernel;
// both return the same value for the same inputs.
double sampled_modulus_lower_bound_serial(const Objective& obj, double delta,
                                          int samples, std::uint64_t seed);
double sampled_modulus_lower_bound(const Objective& obj, double delta,
                                   int samples, std::uint64_t seed);

struct ModulusUpperBounds {
  double semilinear = 0.0;  // ceil(m/2) L_terms + rho delta / 2
  double dc = 0.0;          // Lipschitz of the concave part + rho delta / 2
  double best() const { return semilinear < dc ? semilinear : dc; }
};

ModulusUpperBounds modulus_upper_bounds(const Objective& obj, double delta);

struct ModulusBounds {
  double lower = 0.0;
  double upper = 0.0;
};

ModulusBounds modulus_bounds(const Objective& obj, double delta, int samples,
                             std::uint64_t seed);

}  // namespace goldstein
