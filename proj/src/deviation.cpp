#include "goldstein/deviation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "goldstein/errors.hpp"
#include "goldstein/random.hpp"

namespace goldstein {

SignedAtomicMeasure second_derivative(const PiecewiseLinear1D& h,
                                      double quad_density) {
  SignedAtomicMeasure measure;
  measure.lebesgue_density = quad_density;
  const auto& t = h.breakpoints();
  const auto& g = h.slopes();
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (g[i] != g[i - 1]) measure.atoms.push_back({t[i], g[i] - g[i - 1]});
  }
  return measure;
}

double concave_deviation(const SignedAtomicMeasure& measure, double p,
                         double q) {
  if (!(p < q)) throw InputError("concave_deviation: need p < q");
  double negative = std::max(-measure.lebesgue_density, 0.0) * (q - p);
  for (const auto& atom : measure.atoms) {
    if (!(p < atom.location && atom.location < q)) {
      throw InputError("concave_deviation: atom outside (p, q)");
    }
    negative += std::max(-atom.mass, 0.0);
  }
  return 0.5 * negative;
}

double concave_deviation_bruteforce(const PiecewiseLinear1D& h) {
  const auto& g = h.slopes();
  if (g.size() < 2) return 0.0;

  // For a start slope s0 the cheapest nondecreasing chain keeping g_i + s_i
  // nondecreasing raises s only where g drops. Lipschitz constant of the
  // perturbation is max(|s_0|, |s_m|).
  auto lipschitz_for = [&g](double s0) {
    double s = s0;
    for (std::size_t i = 1; i < g.size(); ++i) {
      s = std::max(s, s + (g[i - 1] - g[i]));
    }
    return std::max(std::abs(s0), std::abs(s));
  };

  double bracket = 1.0;
  for (std::size_t i = 1; i < g.size(); ++i) bracket += std::abs(g[i] - g[i - 1]);
  double lo = -bracket;
  double hi = bracket;
  for (int iter = 0; iter < 400; ++iter) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (!(lo < m1 && m1 < m2 && m2 < hi)) break;
    if (lipschitz_for(m1) < lipschitz_for(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  double best = std::min(lipschitz_for(lo), lipschitz_for(hi));
  return std::min(best, lipschitz_for(0.5 * (lo + hi)));
}

SegmentRestriction restrict_to_segment(const Objective& obj, const Vector& z,
                                       const Vector& w, double delta) {
  if (z.size() != obj.dim() || w.size() != obj.dim()) {
    throw InputError("restrict_to_segment: dimension mismatch");
  }
  if (std::abs(w.norm() - 1.0) > 1e-12) {
    throw InputError("restrict_to_segment: direction must be a unit vector");
  }
  if (!(delta > 0)) throw InputError("restrict_to_segment: delta must be positive");

  std::vector<double> crossings;
  std::vector<double> offset, rate;
  for (const auto& term : obj.terms()) {
    const std::size_t p = term.pieces.size();
    offset.resize(p);
    rate.resize(p);
    for (std::size_t i = 0; i < p; ++i) {
      offset[i] = term.pieces[i].a.dot(z) + term.pieces[i].beta;
      rate[i] = term.pieces[i].a.dot(w);
    }
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t k = i + 1; k < p; ++k) {
        if (rate[i] == rate[k]) continue;
        const double t = (offset[k] - offset[i]) / (rate[i] - rate[k]);
        if (!(t > 0.0 && t < delta)) continue;
        double vmax = -std::numeric_limits<double>::infinity();
        for (std::size_t l = 0; l < p; ++l) {
          vmax = std::max(vmax, offset[l] + rate[l] * t);
        }
        const double tol = activity_tolerance(vmax);
        if (vmax - (offset[i] + rate[i] * t) <= tol &&
            vmax - (offset[k] + rate[k] * t) <= tol) {
          crossings.push_back(t);
        }
      }
    }
  }
  std::sort(crossings.begin(), crossings.end());

  const double merge = 1e-12 * delta;
  std::vector<double> breakpoints{0.0};
  for (double t : crossings) {
    if (t - breakpoints.back() <= merge || delta - t <= merge) continue;
    breakpoints.push_back(t);
  }
  breakpoints.push_back(delta);

  // Slope on each piece: directional derivative of everything except the
  // w'Qw t^2 / 2 curvature, evaluated at the piece midpoint.
  const Vector qz = obj.has_quadratic() ? Vector(obj.quadratic() * z)
                                        : Vector::Zero(obj.dim());
  const double linear_rate = obj.has_quadratic() ? qz.dot(w) : 0.0;
  std::vector<double> slopes;
  slopes.reserve(breakpoints.size() - 1);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double mid = 0.5 * (breakpoints[i] + breakpoints[i + 1]);
    const Vector point = z + mid * w;
    double d = linear_rate + obj.linear().dot(w);
    for (const auto& term : obj.terms()) {
      d += term.sign * term.pieces[select_piece(term, point, w)].a.dot(w);
    }
    slopes.push_back(d);
  }

  SegmentRestriction out{
      PiecewiseLinear1D::from_slopes(std::move(breakpoints), std::move(slopes),
                                     eval(obj, z)),
      obj.has_quadratic() ? w.dot(obj.quadratic() * w) : 0.0};
  return out;
}

Segment sample_segment(const Objective& obj, double delta, std::uint64_t seed,
                       std::uint64_t index) {
  Rng rng = Rng::for_stream(seed, index);
  const int n = obj.dim();
  Vector anchor = rng.box(n, 2.0);
  Vector direction = rng.unit_vector(n);

  // Most samples are pinned to the tie hyperplane of two pieces of one term
  // so the segment crosses a candidate kink; every fourth crosses it along
  // the hyperplane normal, where that kink's slope jump is largest.
  const std::uint64_t kind = index % 4;
  std::vector<std::size_t> concave, any;
  for (std::size_t j = 0; j < obj.terms().size(); ++j) {
    if (obj.terms()[j].pieces.size() < 2) continue;
    any.push_back(j);
    if (obj.terms()[j].sign < 0) concave.push_back(j);
  }
  if (kind != 0 && !any.empty()) {
    const auto& pool = (!concave.empty() && rng.uniform() < 0.75) ? concave : any;
    const auto& term = obj.terms()[pool[rng.below(pool.size())]];
    const std::uint64_t p = term.pieces.size();
    const std::uint64_t i = rng.below(p);
    std::uint64_t k = rng.below(p - 1);
    if (k >= i) ++k;
    const Vector normal = term.pieces[i].a - term.pieces[k].a;
    const double nn = normal.squaredNorm();
    if (nn > 0) {
      const double shift =
          (term.pieces[k].beta - term.pieces[i].beta - normal.dot(anchor)) / nn;
      anchor += shift * normal;
      if (kind == 3) direction = normal / std::sqrt(nn);
    }
  }
  const double back = rng.uniform() * delta;
  return {anchor - back * direction, direction};
}

double segment_deviation(const Objective& obj, const Segment& segment,
                         double delta) {
  const SegmentRestriction r =
      restrict_to_segment(obj, segment.start, segment.direction, delta);
  return concave_deviation(second_derivative(r.h, r.quad_density), 0.0, delta);
}

double sampled_modulus_lower_bound_serial(const Objective& obj, double delta,
                                          int samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("samples must be positive");
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Segment s = sample_segment(obj, delta, seed, static_cast<std::uint64_t>(i));
    best = std::max(best, segment_deviation(obj, s, delta));
  }
  return best;
}

double sampled_modulus_lower_bound(const Objective& obj, double delta,
                                   int samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("samples must be positive");
  double best = 0.0;
#pragma omp parallel for schedule(static) reduction(max : best)
  for (int i = 0; i < samples; ++i) {
    const Segment s = sample_segment(obj, delta, seed, static_cast<std::uint64_t>(i));
    best = std::max(best, segment_deviation(obj, s, delta));
  }
  return best;
}

ModulusUpperBounds modulus_upper_bounds(const Objective& obj, double delta) {
  const double curvature = 0.5 * weak_convexity_modulus(obj) * delta;
  // A line meets at most p - 1 kinks of a p-piece max-affine term.
  long kinks = 0;
  for (const auto& term : obj.terms()) {
    kinks += static_cast<long>(term.pieces.size()) - 1;
  }
  ModulusUpperBounds out;
  out.semilinear =
      static_cast<double>((kinks + 1) / 2) * terms_lipschitz(obj) + curvature;
  out.dc = concave_part_lipschitz(obj) + curvature;
  return out;
}

ModulusBounds modulus_bounds(const Objective& obj, double delta, int samples,
                             std::uint64_t seed) {
  if (!(delta > 0)) throw InputError("modulus_bounds: delta must be positive");
  ModulusBounds out;
  out.lower = sampled_modulus_lower_bound(obj, delta, samples, seed);
  out.upper = modulus_upper_bounds(obj, delta).best();
  return out;
}

}  // namespace goldstein
