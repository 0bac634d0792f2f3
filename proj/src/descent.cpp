#include "goldstein/descent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "goldstein/errors.hpp"

namespace goldstein {

Vector GoldsteinCertificate::weighted_sum() const {
  Vector sum = Vector::Zero(anchor.size());
  for (const auto& atom : atoms) sum += atom.weight * atom.subgrad;
  return sum;
}

double shortest_parameter(const Vector& g, const Vector& gp) {
  const Vector diff = g - gp;
  const double denom = diff.squaredNorm();
  if (denom < 1e-300) return 0.0;
  return std::clamp(g.dot(diff) / denom, 0.0, 1.0);
}

Vector shortest_in_segment(const Vector& g, const Vector& gp) {
  const double t = shortest_parameter(g, gp);
  return g + t * (gp - g);
}

double predicted_reductions(double f0, double f_lb, double delta, double eps) {
  return std::ceil(3.0 * std::max(0.0, f0 - f_lb) / (delta * eps));
}

double predicted_line_searches(double f0, double f_lb, double delta, double eps,
                               double lipschitz) {
  return predicted_reductions(f0, f_lb, delta, eps) * 16.0 * lipschitz *
         lipschitz / (eps * eps);
}

double predicted_calls(double f0, double f_lb, double delta, double eps,
                       double lipschitz, double lambda) {
  return predicted_line_searches(f0, f_lb, delta, eps, lipschitz) *
         (1.0 + std::floor(12.0 * lambda / eps));
}

namespace {

void sync_counters(RunStats& stats, const CallCounter& counter) {
  stats.oracle_calls = counter.oracle_calls;
  stats.value_only_calls = counter.value_only_calls;
}

// Scales existing atoms by (1 - t), appends the new atom with weight t, then
// drops negligible weights and renormalizes.
void combine_atoms(GoldsteinCertificate& cert, double t, CertificateAtom fresh,
                   RunStats& stats) {
  for (auto& atom : cert.atoms) atom.weight *= (1.0 - t);
  fresh.weight = t;
  cert.atoms.push_back(std::move(fresh));

  double pruned = 0.0;
  double kept = 0.0;
  double worst_norm = 0.0;
  std::erase_if(cert.atoms, [&](const CertificateAtom& atom) {
    worst_norm = std::max(worst_norm, atom.subgrad.norm());
    if (atom.weight < kPruneWeight) {
      pruned += atom.weight;
      return true;
    }
    kept += atom.weight;
    return false;
  });
  for (auto& atom : cert.atoms) atom.weight /= kept;
  stats.perturbation_bound += 2.0 * (pruned + std::abs(1.0 - kept)) * worst_norm;
}

}  // namespace

MinimizeResult minimize(const Objective& obj, const Vector& x0,
                        const MinimizeOptions& options) {
  const double delta = options.delta;
  const double eps = options.eps;
  if (!(delta > 0) || !(eps > 0)) {
    throw InputError("minimize: delta and eps must be positive");
  }
  if (x0.size() != obj.dim()) throw InputError("minimize: x0 length mismatch");

  CallCounter counter;
  MinimizeResult result;
  RunStats& stats = result.stats;
  GoldsteinCertificate& cert = result.cert;

  const double lipschitz =
      options.lipschitz.value_or(
          lipschitz_bound(obj, options.lipschitz_radius, x0));
  stats.lipschitz = lipschitz;

  const Vector zero = Vector::Zero(obj.dim());
  Vector x = x0;
  OracleResponse start = oracle_query(obj, x, zero, counter);
  double fx = start.value;
  Vector g = std::move(start.subgrad);
  stats.f_initial = fx;

  stats.predicted_line_searches =
      predicted_line_searches(fx, options.f_lb, delta, eps, lipschitz);
  if (options.lambda_upper) {
    stats.predicted_calls = predicted_calls(fx, options.f_lb, delta, eps,
                                            lipschitz, *options.lambda_upper);
  }
  std::uint64_t budget = 10'000'000;
  if (options.budget) {
    budget = *options.budget;
  } else if (stats.predicted_calls) {
    const double scaled = 10.0 * *stats.predicted_calls;
    budget = scaled >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max()
                              : std::max<std::uint64_t>(
                                    1, static_cast<std::uint64_t>(scaled));
  }
  if (budget == 0) throw InputError("minimize: budget must be positive");

  auto reset_certificate = [&](const Vector& anchor, const Vector& subgrad) {
    cert.anchor = anchor;
    cert.atoms.clear();
    cert.atoms.push_back({1.0, anchor, zero, subgrad});
    cert.aggregate = subgrad;
  };
  reset_certificate(x, g);
  stats.max_subgrad_norm = g.norm();

  std::uint64_t phase_length = 0;
  const double sixteen_l2 = 16.0 * lipschitz * lipschitz;

  for (;;) {
    sync_counters(stats, counter);
    const double gnorm = g.norm();
    if (gnorm <= eps) break;
    if (counter.oracle_calls >= budget) {
      result.x = x;
      stats.f_final = fx;
      throw BudgetExhausted(std::move(result));
    }

    const Vector ghat = g / gnorm;
    const Vector trial = x - delta * ghat;
    const double f_trial = eval(obj, trial, counter);

    if (fx - f_trial >= delta * eps / 3.0) {
      const double decrease = fx - f_trial;
      stats.min_reduction = stats.reduction_steps == 0
                                ? decrease
                                : std::min(stats.min_reduction, decrease);
      ++stats.reduction_steps;
      x = trial;
      fx = f_trial;
      OracleResponse fresh = oracle_query(obj, x, zero, counter);
      g = std::move(fresh.subgrad);
      reset_certificate(x, g);
      stats.max_subgrad_norm = std::max(stats.max_subgrad_norm, g.norm());
      phase_length = 0;
      continue;
    }

    // Insufficient decrease: shorten g using a point found by bisection.
    const double average_slope = ((fx - 0.5 * eps * delta) - f_trial) / delta;
    if (!(average_slope < -eps / 6.0)) ++stats.slope_precondition_violations;

    DescentRestriction line = make_descent_h(obj, x, ghat, delta, eps, counter);
    const SearchOutcome found = bisect(line.univariate(), options.max_depth);
    ++stats.line_searches;
    stats.line_search_evaluations += found.evaluations;
    stats.max_line_search_evaluations =
        std::max(stats.max_line_search_evaluations, found.evaluations);

    const Vector& gp = line.last_response().subgrad;
    stats.max_subgrad_norm = std::max(stats.max_subgrad_norm, gp.norm());
    const double t = shortest_parameter(g, gp);
    Vector shorter = g + t * (gp - g);

    const double rho = g.squaredNorm() / sixteen_l2;
    const double rho_next = shorter.squaredNorm() / sixteen_l2;
    if (gnorm > lipschitz * (1.0 + 1e-12) ||
        gp.norm() > lipschitz * (1.0 + 1e-12)) {
      ++stats.lipschitz_violations;
    }
    if (rho_next > rho * (1.0 - rho) * (1.0 + 1e-12)) ++stats.rho_violations;

    combine_atoms(cert,
                  t,
                  {0.0, line.point_at(found.t_star), ghat, gp},
                  stats);
    g = std::move(shorter);
    cert.aggregate = g;
    ++stats.shortening_steps;
    ++phase_length;
    stats.max_phase_length = std::max(stats.max_phase_length, phase_length);
  }

  sync_counters(stats, counter);
  stats.f_final = fx;
  result.x = x;
  return result;
}

Report verify_certificate(const Objective& obj, const Vector& x,
                          const GoldsteinCertificate& cert, double delta,
                          double eps) {
  Report report;
  const int n = obj.dim();
  auto fmt = [](double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
  };

  bool shapes_ok = x.size() == n && cert.anchor.size() == n &&
                   cert.aggregate.size() == n && !cert.atoms.empty();
  for (const auto& atom : cert.atoms) {
    shapes_ok = shapes_ok && atom.point.size() == n &&
                atom.direction.size() == n && atom.subgrad.size() == n;
  }
  report.add("shapes", shapes_ok, shapes_ok ? 0.0 : -1.0,
             std::to_string(cert.atoms.size()) + " atoms");
  if (!shapes_ok) return report;

  const double anchor_gap = (cert.anchor - x).norm();
  const double anchor_tol = 1e-12 * (1.0 + x.norm());
  report.add("anchor", anchor_gap <= anchor_tol, anchor_tol - anchor_gap);

  double min_weight = std::numeric_limits<double>::infinity();
  double weight_sum = 0.0;
  double max_dist = 0.0;
  double max_replay = 0.0;
  double max_norm = 0.0;
  CallCounter counter;
  for (const auto& atom : cert.atoms) {
    min_weight = std::min(min_weight, atom.weight);
    weight_sum += atom.weight;
    max_dist = std::max(max_dist, (atom.point - x).norm());
    const OracleResponse replay =
        oracle_query(obj, atom.point, atom.direction, counter);
    const double dev = (replay.subgrad - atom.subgrad).norm() /
                       (1.0 + atom.subgrad.norm());
    max_replay = std::max(max_replay, dev);
    max_norm = std::max(max_norm, atom.subgrad.norm());
  }
  report.add("weights_positive", min_weight > 0, min_weight,
             "min weight " + fmt(min_weight));
  const double sum_gap = std::abs(weight_sum - 1.0);
  report.add("weights_sum", sum_gap <= 1e-10, 1e-10 - sum_gap,
             "sum " + fmt(weight_sum));
  const double radius = delta * (1.0 + 1e-10);
  report.add("ball", max_dist <= radius, radius - max_dist,
             "max distance " + fmt(max_dist));
  report.add("oracle_replay", max_replay <= 1e-12, 1e-12 - max_replay,
             "max relative deviation " + fmt(max_replay));

  const Vector combined = cert.weighted_sum();
  const double agg_gap = (combined - cert.aggregate).norm();
  const double agg_tol = 1e-10 * std::max(1.0, max_norm);
  report.add("aggregate", agg_gap <= agg_tol, agg_tol - agg_gap,
             "|sum - aggregate| " + fmt(agg_gap));
  const double size = combined.norm();
  report.add("small", size <= eps, eps - size, "|g| " + fmt(size));
  return report;
}

std::ostream& operator<<(std::ostream& os, const Report& report) {
  for (const auto& c : report.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << " margin=" << c.worst_margin;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << '\n';
  }
  return os;
}

}  // namespace goldstein
