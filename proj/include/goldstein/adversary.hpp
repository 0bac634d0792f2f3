#pragma once

// Worst-case restriction for the bisection search: a piecewise-linear h on
// [0, 1] with h(0) = 0, h(1) = -1, concave deviation below M, and positive
// right derivative at every point of a prescribed probe set T.

#include <vector>

#include "goldstein/piecewise_linear.hpp"
#include "goldstein/report.hpp"

namespace goldstein {

struct AdversarialSpec {
  std::vector<double> nodes;  // T, a finite subset of [0, 1)
  double budget = 1.0;        // M, with |T| < 2M
  double gamma = 0.01;        // half-width of the rising interval at each node
};

// 0.25 * min(adjacent gaps, first node, 1 - last node). A node at 0 does
// not constrain the bound from the left. Infinite for empty T.
double adversary_gamma_max(const std::vector<double>& nodes);

// Throws InputError for unsorted or out-of-range nodes, |T| >= 2M, or gamma
// outside (0, gamma_max).
void validate(const AdversarialSpec& spec);

// Knots (t_i - gamma, -t_i - gamma^2) and (t_i + gamma, -t_i + gamma^2) for
// each node, joined linearly between (0, 0) and (1, -1). A node at 0
// replaces the first pair by (0, 0) and (gamma, gamma^2).
PiecewiseLinear1D build_adversarial_h(const AdversarialSpec& spec);

// Closed form for the deviation of the constructed h:
//   1/2 sum_{i<k} ((gap_i + 2 gamma^2) / (gap_i - 2 gamma) + gamma)
//     + 1/2 ((1 - t_k + gamma^2) / (1 - t_k - gamma) + gamma).
double adversary_deviation_closed_form(const AdversarialSpec& spec);

struct AdversaryReport {
  Report report;
  double deviation = 0.0;  // brute-force value
  int fruitless_queries = 0;
};

AdversaryReport certify_adversary(const AdversarialSpec& spec);

}  // namespace goldstein
