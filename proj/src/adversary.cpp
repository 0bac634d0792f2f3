#include "goldstein/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "goldstein/deviation.hpp"
#include "goldstein/errors.hpp"

namespace goldstein {

double adversary_gamma_max(const std::vector<double>& nodes) {
  if (nodes.empty()) return std::numeric_limits<double>::infinity();
  double gap = 1.0 - nodes.back();
  if (nodes.front() > 0.0) gap = std::min(gap, nodes.front());
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    gap = std::min(gap, nodes[i] - nodes[i - 1]);
  }
  return 0.25 * gap;
}

void validate(const AdversarialSpec& spec) {
  const auto& t = spec.nodes;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] >= 0.0 && t[i] < 1.0)) {
      throw InputError("adversary: node " + std::to_string(t[i]) +
                       " outside [0, 1)");
    }
    if (i > 0 && !(t[i - 1] < t[i])) {
      throw InputError("adversary: nodes must be strictly increasing");
    }
  }
  if (!(spec.budget > 0)) throw InputError("adversary: M must be positive");
  if (!(static_cast<double>(t.size()) < 2.0 * spec.budget)) {
    throw InputError("adversary: need |T| < 2M");
  }
  if (!(spec.gamma > 0.0 && spec.gamma < adversary_gamma_max(t))) {
    throw InputError("adversary: gamma must lie in (0, gamma_max)");
  }
}

PiecewiseLinear1D build_adversarial_h(const AdversarialSpec& spec) {
  validate(spec);
  const double gamma = spec.gamma;
  const double g2 = gamma * gamma;
  std::vector<double> ts{0.0};
  std::vector<double> hs{0.0};
  for (double node : spec.nodes) {
    if (node == 0.0) {
      ts.push_back(gamma);
      hs.push_back(g2);
      continue;
    }
    ts.push_back(node - gamma);
    hs.push_back(-node - g2);
    ts.push_back(node + gamma);
    hs.push_back(-node + g2);
  }
  ts.push_back(1.0);
  hs.push_back(-1.0);
  return PiecewiseLinear1D::from_knots(std::move(ts), std::move(hs));
}

double adversary_deviation_closed_form(const AdversarialSpec& spec) {
  const auto& t = spec.nodes;
  if (t.empty()) return 0.0;
  const double gamma = spec.gamma;
  const double g2 = gamma * gamma;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double gap = t[i + 1] - t[i];
    total += (gap + 2.0 * g2) / (gap - 2.0 * gamma) + gamma;
  }
  const double tail = 1.0 - t.back();
  total += (tail + g2) / (tail - gamma) + gamma;
  return 0.5 * total;
}

AdversaryReport certify_adversary(const AdversarialSpec& spec) {
  const PiecewiseLinear1D h = build_adversarial_h(spec);
  AdversaryReport out;
  Report& report = out.report;

  const double h0 = h.value(0.0);
  const double h1 = h.value(1.0);
  report.add("h(0) = 0", h0 == 0.0, -std::abs(h0));
  report.add("h(1) = -1", h1 == -1.0, -std::abs(h1 + 1.0));

  double min_slope = std::numeric_limits<double>::infinity();
  for (double node : spec.nodes) min_slope = std::min(min_slope, h.right_derivative(node));
  const bool positive = spec.nodes.empty() || min_slope > 0.0;
  report.add("h'_+ > 0 on T", positive,
             spec.nodes.empty() ? 0.0 : min_slope,
             spec.nodes.empty() ? "vacuous" : "");

  out.deviation = concave_deviation_bruteforce(h);
  report.add("deviation < M", out.deviation < spec.budget,
             spec.budget - out.deviation,
             "deviation " + std::to_string(out.deviation));

  // Every probe of a point of T returns a nonnegative derivative, so a
  // search confined to T never terminates early.
  out.fruitless_queries = positive ? static_cast<int>(spec.nodes.size()) : 0;
  const bool lower_bound = positive && out.deviation < spec.budget &&
                           static_cast<double>(spec.nodes.size()) < 2.0 * spec.budget;
  report.add("|T| fruitless queries", lower_bound,
             2.0 * spec.budget - static_cast<double>(spec.nodes.size()),
             std::to_string(out.fruitless_queries) + " of " +
                 std::to_string(spec.nodes.size()));
  return out;
}

}  // namespace goldstein
