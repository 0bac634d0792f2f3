#pragma once

// Fixed-step nonsmooth descent producing a Goldstein epsilon-subgradient
// together with an explicit convex-combination witness.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "goldstein/line_search.hpp"
#include "goldstein/objective.hpp"
#include "goldstein/report.hpp"

namespace goldstein {

struct CertificateAtom {
  double weight = 0.0;
  Vector point;
  Vector direction;
  Vector subgrad;
};

// g = sum_i weight_i * G(point_i, direction_i) with every point within delta
// of the anchor.
struct GoldsteinCertificate {
  Vector anchor;
  std::vector<CertificateAtom> atoms;
  Vector aggregate;

  Vector weighted_sum() const;
};

struct RunStats {
  std::uint64_t oracle_calls = 0;
  std::uint64_t value_only_calls = 0;
  std::uint64_t line_searches = 0;
  std::uint64_t reduction_steps = 0;
  std::uint64_t shortening_steps = 0;

  // Diagnostics checked against the convergence analysis.
  std::uint64_t line_search_evaluations = 0;
  int max_line_search_evaluations = 0;
  std::uint64_t max_phase_length = 0;
  std::uint64_t rho_violations = 0;
  std::uint64_t lipschitz_violations = 0;
  std::uint64_t slope_precondition_violations = 0;
  double min_reduction = 0.0;  // smallest accepted decrease; 0 if none
  double max_subgrad_norm = 0.0;
  double perturbation_bound = 0.0;  // accumulated pruning perturbation

  double lipschitz = 0.0;
  double f_initial = 0.0;
  double f_final = 0.0;

  // Valid only when f_lb <= inf f and lambda_upper bounds the modulus.
  double predicted_line_searches = 0.0;
  std::optional<double> predicted_calls;
};

struct MinimizeOptions {
  double delta = 0.1;
  double eps = 0.1;
  double f_lb = 0.0;
  std::optional<double> lambda_upper;
  // Oracle-call limit. Defaults to 10x predicted_calls when lambda_upper is
  // given, else 1e7.
  std::optional<std::uint64_t> budget;
  // L used for predictions and the shortening checks. Defaults to
  // lipschitz_bound(obj, lipschitz_radius, x0).
  std::optional<double> lipschitz;
  double lipschitz_radius = 10.0;
  int max_depth = kDefaultMaxDepth;
};

struct MinimizeResult {
  Vector x;
  GoldsteinCertificate cert;
  RunStats stats;
};

class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(MinimizeResult partial)
      : std::runtime_error("oracle budget exhausted"),
        partial_(std::move(partial)) {}
  const MinimizeResult& partial() const { return partial_; }

 private:
  MinimizeResult partial_;
};

inline constexpr double kPruneWeight = 1e-14;

// Minimizer parameter over [0, 1] of |g + t (gp - g)|.
double shortest_parameter(const Vector& g, const Vector& gp);

Vector shortest_in_segment(const Vector& g, const Vector& gp);

// ceil(3 (f0 - f_lb) / (delta eps)) * 16 L^2 / eps^2.
double predicted_line_searches(double f0, double f_lb, double delta, double eps,
                               double lipschitz);

// predicted_line_searches * (1 + floor(12 lambda / eps)).
double predicted_calls(double f0, double f_lb, double delta, double eps,
                       double lipschitz, double lambda);

// ceil(3 (f0 - f_lb) / (delta eps)).
double predicted_reductions(double f0, double f_lb, double delta, double eps);

// Throws BudgetExhausted or NonSemismoothSuspected.
MinimizeResult minimize(const Objective& obj, const Vector& x0,
                        const MinimizeOptions& options);

// Independent referee: replays every atom through the oracle.
Report verify_certificate(const Objective& obj, const Vector& x,
                          const GoldsteinCertificate& cert, double delta,
                          double eps);

}  // namespace goldstein
