#pragma once

// Experiment grid over (delta, eps): runs the descent, re-verifies each
// certificate and compares observed oracle counts with the complexity bound.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "goldstein/descent.hpp"
#include "goldstein/objective.hpp"

namespace goldstein {

struct ExperimentConfig {
  Vector x0;
  std::vector<double> deltas;
  std::vector<double> epsilons;
  double f_lb = 0.0;
  bool f_lb_certified = true;
  // Caller-supplied modulus bound; otherwise the closed-form upper bound.
  std::optional<double> lambda_upper;
  std::uint64_t seed = 1;
  int lower_samples = 256;  // 0 skips the sampled lower bound
  std::optional<std::uint64_t> budget;
  std::optional<double> lipschitz;

  // Throws InputError on an empty grid or nonpositive entries.
  void validate() const;
};

enum class RunStatus { kOk, kBudgetExhausted, kNonSemismooth };

const char* to_string(RunStatus status);

struct ResultRow {
  double delta = 0.0;
  double eps = 0.0;
  double lipschitz = 0.0;
  double lambda_upper = 0.0;
  double lambda_lower = 0.0;  // NaN when not sampled
  std::uint64_t oracle_calls = 0;
  std::uint64_t line_searches = 0;
  std::uint64_t reduction_steps = 0;
  std::uint64_t shortening_steps = 0;
  double predicted_calls = 0.0;
  double bound_ratio = 0.0;
  bool certificate_valid = false;
  bool bound_certified = true;  // false marks bound_ratio as advisory
  RunStatus status = RunStatus::kOk;
  double f_final = 0.0;
  double wall_time = 0.0;  // seconds; excluded from determinism checks
};

struct GridPoint {
  ResultRow row;
  std::optional<MinimizeResult> result;  // empty when the run errored
};

GridPoint run_point(const Objective& obj, const ExperimentConfig& config,
                    double delta, double eps);

// Rows come back in grid order (delta-major) for both variants.
std::vector<GridPoint> run_grid_serial(const Objective& obj,
                                       const ExperimentConfig& config);
std::vector<GridPoint> run_grid(const Objective& obj,
                                const ExperimentConfig& config);

std::string csv_header(bool with_wall_time = true);
std::string to_csv_line(const ResultRow& row, bool with_wall_time = true);
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows,
               bool with_wall_time = true);
// Inverse of write_csv (header required, wall_time column optional).
std::vector<ResultRow> parse_csv(const std::string& text);

// 0 all good, 2 some run errored, 3 some certificate failed verification.
int grid_exit_code(const std::vector<ResultRow>& rows);

}  // namespace goldstein
