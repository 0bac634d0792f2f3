#include <cmath>

#include "doctest.h"
#include "goldstein/deviation.hpp"
#include "goldstein/errors.hpp"
#include "test_support.hpp"

using namespace goldstein;
using namespace goldstein::testing;

namespace {

// Piecewise-linear h restricted to [a, b] (a, b inside its domain).
PiecewiseLinear1D restrict_pl(const PiecewiseLinear1D& h, double a, double b) {
  std::vector<double> t{a};
  for (double x : h.breakpoints()) {
    if (x > a && x < b) t.push_back(x);
  }
  t.push_back(b);
  std::vector<double> g;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    g.push_back(h.right_derivative(0.5 * (t[i] + t[i + 1])));
  }
  return PiecewiseLinear1D::from_slopes(t, g, h.value(a));
}

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)) + 1e-12;
}

}  // namespace

TEST_CASE("second derivative atoms") {
  auto m = second_derivative(PiecewiseLinear1D::from_slopes({-1, 0, 1}, {-1, 1}, 1));
  REQUIRE(m.atoms.size() == 1);
  CHECK(m.atoms[0].location == 0.0);
  CHECK(m.atoms[0].mass == 2.0);

  m = second_derivative(PiecewiseLinear1D::from_slopes({-1, 0, 1}, {1, -1}, -1));
  REQUIRE(m.atoms.size() == 1);
  CHECK(m.atoms[0].mass == -2.0);

  m = second_derivative(PiecewiseLinear1D::from_slopes({0, 0.3, 0.6, 1}, {1, -3, 2}, 0));
  REQUIRE(m.atoms.size() == 2);
  CHECK(m.atoms[0].location == 0.3);
  CHECK(m.atoms[0].mass == -4.0);
  CHECK(m.atoms[1].location == 0.6);
  CHECK(m.atoms[1].mass == 5.0);
  CHECK(m.lebesgue_density == 0.0);
}

TEST_CASE("concave deviation formula") {
  const double delta = 0.3;
  const auto abs_t = PiecewiseLinear1D::from_slopes({-delta, 0, delta}, {-1, 1}, delta);
  const auto neg_abs = PiecewiseLinear1D::from_slopes({-delta, 0, delta}, {1, -1}, -delta);
  CHECK(concave_deviation(second_derivative(abs_t), -delta, delta) == 0.0);
  CHECK(concave_deviation(second_derivative(neg_abs), -delta, delta) == 1.0);

  const double rho = 2.5;
  SignedAtomicMeasure weakly{-rho, {}};
  CHECK(concave_deviation(weakly, 0.0, delta) == doctest::Approx(rho * delta / 2));

  CHECK_THROWS_AS(concave_deviation(second_derivative(abs_t), 0.0, delta), InputError);
  CHECK_THROWS_AS(concave_deviation(weakly, 1.0, 1.0), InputError);
}

TEST_CASE("brute-force deviation") {
  CHECK(concave_deviation_bruteforce(
            PiecewiseLinear1D::from_slopes({-1, 0, 1}, {-1, 1}, 0)) <= 1e-15);
  CHECK(concave_deviation_bruteforce(
            PiecewiseLinear1D::from_slopes({-1, 0, 1}, {1, -1}, 0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const auto h = PiecewiseLinear1D::from_slopes({0, 0.25, 0.5, 0.75, 1}, {1, -3, 2, -2}, 0);
  CHECK(concave_deviation_bruteforce(h) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(concave_deviation(second_derivative(h), 0, 1) == 4.0);
  CHECK(concave_deviation_bruteforce(PiecewiseLinear1D::from_slopes({0, 1}, {7}, 0)) == 0.0);
}

TEST_CASE("formula agrees with brute force on random h") {
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto h = random_piecewise_linear(rng, static_cast<int>(rng.below(51)), 10.0);
    const double formula = concave_deviation(second_derivative(h), h.left(), h.right());
    CHECK(close(formula, concave_deviation_bruteforce(h)));
  }
}

TEST_CASE("subadditivity and the piecewise-linear cap") {
  Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(20));
    const auto h = random_piecewise_linear(rng, m, 10.0);
    const double whole = concave_deviation_bruteforce(h);

    const double split = rng.uniform(0.05, 0.95);
    const double parts = concave_deviation_bruteforce(restrict_pl(h, 0.0, split)) +
                         concave_deviation_bruteforce(restrict_pl(h, split, 1.0));
    CHECK(close(whole, parts));

    CHECK(whole <= std::ceil(h.interior_breakpoints() / 2.0) * h.lipschitz() * (1 + 1e-12));

    // Splitting at a downward kink loses exactly that atom.
    const auto& t = h.breakpoints();
    const auto& g = h.slopes();
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
      if (g[i] >= g[i - 1]) continue;
      const double at_kink = concave_deviation_bruteforce(restrict_pl(h, 0.0, t[i])) +
                             concave_deviation_bruteforce(restrict_pl(h, t[i], 1.0));
      CHECK(at_kink < whole);
      CHECK(close(whole - at_kink, 0.5 * (g[i - 1] - g[i])));
      break;
    }
  }
}

TEST_CASE("density and atoms split componentwise") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha = rng.uniform(-3.0, 3.0);
    const auto base = random_piecewise_linear(rng, 1 + static_cast<int>(rng.below(6)), 5.0);
    // The density is replaced below by grid - 1 kinks of mass alpha / grid.
    const int grid = 4096;
    const double formula = concave_deviation(
        second_derivative(base, alpha * (grid - 1) / grid), base.left(), base.right());

    std::vector<double> t;
    for (int i = 0; i <= grid; ++i) t.push_back(static_cast<double>(i) / grid);
    for (double x : base.breakpoints()) t.push_back(x);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    std::vector<double> g;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      const double mid = 0.5 * (t[i] + t[i + 1]);
      const double cell = std::floor(mid * grid) / grid;
      g.push_back(base.right_derivative(mid) + alpha * cell);
    }
    const auto staircase = PiecewiseLinear1D::from_slopes(t, g, 0.0);
    CHECK(std::abs(formula - concave_deviation_bruteforce(staircase)) <= 1e-9 * (1 + formula));
  }
}

TEST_CASE("restriction to a segment") {
  const double delta = 0.4;
  const Objective absx(2, Matrix(), Vector(), {abs_term(2, 0)});
  const auto r = restrict_to_segment(absx, vec({-delta / 2, 0}), vec({1, 0}), delta);
  REQUIRE(r.h.interior_breakpoints() == 1);
  CHECK(r.h.breakpoints()[1] == doctest::Approx(delta / 2));
  CHECK(r.h.slopes() == std::vector<double>{-1, 1});
  CHECK(r.quad_density == 0.0);

  const Objective neg(2, Matrix(), Vector(), {abs_term(2, 0, -1)});
  const auto rn = restrict_to_segment(neg, vec({-delta / 2, 0}), vec({1, 0}), delta);
  CHECK(rn.h.slopes() == std::vector<double>{1, -1});

  const auto rq = restrict_to_segment(half_norm_squared(3), vec({0.1, 0.2, 0.3}),
                                      vec({0, 0.6, 0.8}), delta);
  CHECK(rq.h.interior_breakpoints() == 0);
  CHECK(rq.quad_density == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(restrict_to_segment(absx, vec({0, 0}), vec({2, 0}), delta), InputError);
}

TEST_CASE("restriction slopes equal directional derivatives") {
  Rng rng(14);
  int compared = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(5));
    const Objective f = random_objective(rng, n, false);
    const Vector z = rng.box(n, 2.0);
    const Vector w = rng.unit_vector(n);
    const double delta = rng.uniform(0.05, 2.0);
    const auto r = restrict_to_segment(f, z, w, delta);
    const auto& t = r.h.breakpoints();
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      const double mid = 0.5 * (t[i] + t[i + 1]);
      CHECK(r.h.right_derivative(mid) == dir_derivative(f, z + mid * w, w));
      ++compared;
    }
    // Values agree with the objective along the segment.
    for (double s : {0.0, 0.3, 0.7, 1.0}) {
      const double x = s * delta;
      CHECK(r.h.value(x) == doctest::Approx(eval(f, z + x * w)).epsilon(1e-9).scale(1.0));
    }
  }
  CHECK(compared > 1000);
}

TEST_CASE("modulus bounds") {
  std::vector<SignedMaxAffine> l1;
  l1.push_back(abs_term(2, 0));
  l1.push_back(abs_term(2, 1));
  const Objective convex(2, Matrix(), Vector(), l1);
  const auto cb = modulus_bounds(convex, 0.5, 500, 1);
  CHECK(cb.lower == 0.0);
  CHECK(cb.upper == 0.0);

  const Objective neg(2, Matrix(), Vector(), {abs_term(2, 0, -1)});
  const auto ub = modulus_upper_bounds(neg, 1.0);
  CHECK(ub.semilinear == 1.0);
  CHECK(ub.dc == 1.0);
  const double lower = sampled_modulus_lower_bound_serial(neg, 1.0, 10000, 3);
  CHECK(lower <= ub.best());
  CHECK(lower >= ub.best() - 1e-6);

  const Objective concave_quad(3, -Matrix::Identity(3, 3), Vector(), {});
  const auto qb = modulus_bounds(concave_quad, 0.2, 100, 4);
  CHECK(qb.lower == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(qb.upper == doctest::Approx(0.1).epsilon(1e-12));

  Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(5));
    const Objective f = random_objective(rng, n, trial % 2 == 0);
    const double delta = rng.uniform(0.05, 1.0);
    const auto b = modulus_bounds(f, delta, 200, trial);
    CHECK(b.lower <= b.upper * (1 + 1e-9) + 1e-12);
  }
}

TEST_CASE("segment sampling is seed-deterministic") {
  Rng rng(16);
  const Objective f = random_objective(rng, 4, true);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Segment a = sample_segment(f, 0.3, 42, i);
    const Segment b = sample_segment(f, 0.3, 42, i);
    CHECK(a.start == b.start);
    CHECK(a.direction == b.direction);
    CHECK(std::abs(a.direction.norm() - 1.0) < 1e-12);
  }
  CHECK(sampled_modulus_lower_bound_serial(f, 0.3, 300, 42) ==
        sampled_modulus_lower_bound_serial(f, 0.3, 300, 42));
}
