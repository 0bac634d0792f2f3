#include "goldstein/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "goldstein/deviation.hpp"
#include "goldstein/errors.hpp"

namespace goldstein {

void ExperimentConfig::validate() const {
  if (deltas.empty() || epsilons.empty()) {
    throw InputError("experiment grid must have at least one delta and eps");
  }
  for (double d : deltas) {
    if (!(d > 0)) throw InputError("delta values must be positive");
  }
  for (double e : epsilons) {
    if (!(e > 0)) throw InputError("eps values must be positive");
  }
  if (lower_samples < 0) throw InputError("sample count must be nonnegative");
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kOk: return "ok";
    case RunStatus::kBudgetExhausted: return "budget_exhausted";
    case RunStatus::kNonSemismooth: return "non_semismooth";
  }
  return "unknown";
}

GridPoint run_point(const Objective& obj, const ExperimentConfig& config,
                    double delta, double eps) {
  const auto start = std::chrono::steady_clock::now();
  GridPoint out;
  ResultRow& row = out.row;
  row.delta = delta;
  row.eps = eps;
  row.bound_certified = config.f_lb_certified;
  row.lambda_upper =
      config.lambda_upper.value_or(modulus_upper_bounds(obj, delta).best());
  row.lambda_lower =
      config.lower_samples > 0
          ? sampled_modulus_lower_bound_serial(obj, delta, config.lower_samples,
                                               config.seed)
          : std::numeric_limits<double>::quiet_NaN();

  MinimizeOptions options;
  options.delta = delta;
  options.eps = eps;
  options.f_lb = config.f_lb;
  options.lambda_upper = row.lambda_upper;
  options.budget = config.budget;
  options.lipschitz = config.lipschitz;

  auto fill = [&row](const MinimizeResult& r) {
    row.lipschitz = r.stats.lipschitz;
    row.oracle_calls = r.stats.oracle_calls;
    row.line_searches = r.stats.line_searches;
    row.reduction_steps = r.stats.reduction_steps;
    row.shortening_steps = r.stats.shortening_steps;
    row.predicted_calls = r.stats.predicted_calls.value_or(0.0);
    row.bound_ratio = row.predicted_calls > 0
                          ? static_cast<double>(row.oracle_calls) / row.predicted_calls
                          : std::numeric_limits<double>::infinity();
    row.f_final = r.stats.f_final;
  };

  try {
    MinimizeResult result = minimize(obj, config.x0, options);
    fill(result);
    row.certificate_valid =
        verify_certificate(obj, result.x, result.cert, delta, eps).passed();
    out.result = std::move(result);
  } catch (const BudgetExhausted& e) {
    fill(e.partial());
    row.status = RunStatus::kBudgetExhausted;
  } catch (const NonSemismoothSuspected&) {
    row.status = RunStatus::kNonSemismooth;
    row.lipschitz = lipschitz_bound(obj, options.lipschitz_radius, config.x0);
  }
  row.wall_time = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return out;
}

std::vector<GridPoint> run_grid_serial(const Objective& obj,
                                       const ExperimentConfig& config) {
  config.validate();
  std::vector<GridPoint> points;
  for (double delta : config.deltas) {
    for (double eps : config.epsilons) {
      points.push_back(run_point(obj, config, delta, eps));
    }
  }
  return points;
}

std::vector<GridPoint> run_grid(const Objective& obj,
                                const ExperimentConfig& config) {
  config.validate();
  const int ne = static_cast<int>(config.epsilons.size());
  const int total = static_cast<int>(config.deltas.size()) * ne;
  std::vector<GridPoint> points(total);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < total; ++i) {
    points[i] = run_point(obj, config, config.deltas[i / ne], config.epsilons[i % ne]);
  }
  return points;
}

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr const char* kColumns[] = {
    "delta",          "eps",          "L",
    "lambda_upper",   "lambda_lower", "oracle_calls",
    "line_searches",  "reduction_steps", "shortening_steps",
    "predicted_calls", "bound_ratio", "certificate_valid",
    "bound_certified", "status",      "f_final"};

}  // namespace

std::string csv_header(bool with_wall_time) {
  std::string out;
  for (const char* c : kColumns) {
    if (!out.empty()) out += ',';
    out += c;
  }
  if (with_wall_time) out += ",wall_time";
  return out;
}

std::string to_csv_line(const ResultRow& row, bool with_wall_time) {
  std::ostringstream os;
  os << format_double(row.delta) << ',' << format_double(row.eps) << ','
     << format_double(row.lipschitz) << ',' << format_double(row.lambda_upper)
     << ',' << format_double(row.lambda_lower) << ',' << row.oracle_calls << ','
     << row.line_searches << ',' << row.reduction_steps << ','
     << row.shortening_steps << ',' << format_double(row.predicted_calls) << ','
     << format_double(row.bound_ratio) << ',' << (row.certificate_valid ? 1 : 0)
     << ',' << (row.bound_certified ? 1 : 0) << ',' << to_string(row.status)
     << ',' << format_double(row.f_final);
  if (with_wall_time) os << ',' << format_double(row.wall_time);
  return os.str();
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows,
               bool with_wall_time) {
  os << csv_header(with_wall_time) << '\n';
  for (const auto& row : rows) os << to_csv_line(row, with_wall_time) << '\n';
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InputError("csv: missing header");
  const bool with_time = line == csv_header(true);
  if (!with_time && line != csv_header(false)) {
    throw InputError("csv: unexpected header");
  }
  const std::size_t width = std::size(kColumns) + (with_time ? 1 : 0);

  std::vector<ResultRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != width) {
      throw InputError("csv line " + std::to_string(lineno) + ": expected " +
                       std::to_string(width) + " cells");
    }
    auto real = [&](std::size_t i) { return std::strtod(cells[i].c_str(), nullptr); };
    auto count = [&](std::size_t i) {
      return static_cast<std::uint64_t>(std::strtoull(cells[i].c_str(), nullptr, 10));
    };
    ResultRow row;
    row.delta = real(0);
    row.eps = real(1);
    row.lipschitz = real(2);
    row.lambda_upper = real(3);
    row.lambda_lower = real(4);
    row.oracle_calls = count(5);
    row.line_searches = count(6);
    row.reduction_steps = count(7);
    row.shortening_steps = count(8);
    row.predicted_calls = real(9);
    row.bound_ratio = real(10);
    row.certificate_valid = cells[11] == "1";
    row.bound_certified = cells[12] == "1";
    if (cells[13] == "ok") {
      row.status = RunStatus::kOk;
    } else if (cells[13] == "budget_exhausted") {
      row.status = RunStatus::kBudgetExhausted;
    } else if (cells[13] == "non_semismooth") {
      row.status = RunStatus::kNonSemismooth;
    } else {
      throw InputError("csv line " + std::to_string(lineno) + ": unknown status");
    }
    row.f_final = real(14);
    if (with_time) row.wall_time = real(15);
    rows.push_back(row);
  }
  return rows;
}

int grid_exit_code(const std::vector<ResultRow>& rows) {
  int code = 0;
  for (const auto& row : rows) {
    if (row.status != RunStatus::kOk) return 2;
    if (!row.certificate_valid) code = 3;
  }
  return code;
}

}  // namespace goldstein
