// goldstein: command-line front end.
//
//   goldstein minimize   --problem p.json --x0 1,1 --delta 0.1 --eps 0.1,0.05 --flb 0
//   goldstein linesearch --pl h.json [--shift s]
//   goldstein deviation  --pl h.json | --problem p.json [--z .. --w .. ] --delta d
//   goldstein adversary  --T 0.25,0.75 --M 1.5 --gamma 0.005 [--out h.json]
//   goldstein bench      --problem p.json --x0 .. --delta 0.1 --eps 0.2,0.1,0.05
//   goldstein verify     --problem p.json --cert c.json
//
// Exit codes: 0 success, 1 input error, 2 run error, 3 verification failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "goldstein/adversary.hpp"
#include "goldstein/descent.hpp"
#include "goldstein/deviation.hpp"
#include "goldstein/errors.hpp"
#include "goldstein/harness.hpp"
#include "goldstein/line_search.hpp"
#include "goldstein/problem_io.hpp"

namespace {

using namespace goldstein;

constexpr int kInputError = 1;
constexpr int kRunError = 2;
constexpr int kVerifyError = 3;

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end == cell.c_str() || *end != '\0' || !std::isfinite(v)) {
      throw InputError(std::string(what) + ": cannot parse '" + cell + "'");
    }
    out.push_back(v);
  }
  return out;
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

struct MinimizeArgs {
  std::string problem;
  std::string x0;
  std::string deltas = "0.1";
  std::string epsilons = "0.1";
  double f_lb = 0.0;
  bool f_lb_uncertified = false;
  std::optional<double> lambda_upper;
  std::uint64_t seed = 1;
  int samples = 256;
  std::string out;
  std::optional<std::uint64_t> budget;
  std::optional<double> lipschitz;
  std::string cert_prefix;
};

void add_run_options(CLI::App* cmd, MinimizeArgs& a) {
  cmd->add_option("--problem", a.problem, "problem file (JSON)")->required();
  cmd->add_option("--x0", a.x0, "starting point, comma separated (default 0)");
  cmd->add_option("--delta", a.deltas, "comma-separated delta grid");
  cmd->add_option("--eps", a.epsilons, "comma-separated eps grid");
  cmd->add_option("--flb", a.f_lb, "lower bound on inf f used by the predictions");
  cmd->add_flag("--flb-uncertified", a.f_lb_uncertified,
                "mark bound_ratio advisory (f_lb not known to bound inf f)");
  cmd->add_option("--lambda-upper", a.lambda_upper,
                  "nonconvexity modulus bound (default: closed-form upper bound)");
  cmd->add_option("--seed", a.seed, "seed for the sampled modulus lower bound");
  cmd->add_option("--samples", a.samples, "segments sampled for lambda_lower (0 = skip)");
  cmd->add_option("--out", a.out, "CSV output path (default stdout)");
  cmd->add_option("--budget", a.budget, "oracle-call limit per run");
  cmd->add_option("--lipschitz", a.lipschitz, "override the Lipschitz bound L");
}

ExperimentConfig make_config(const MinimizeArgs& a, const Objective& obj) {
  ExperimentConfig config;
  const auto x0 = parse_list(a.x0, "--x0");
  config.x0 = x0.empty() ? Vector(Vector::Zero(obj.dim())) : to_vector(x0);
  if (config.x0.size() != obj.dim()) throw InputError("--x0 length must equal dim");
  config.deltas = parse_list(a.deltas, "--delta");
  config.epsilons = parse_list(a.epsilons, "--eps");
  config.f_lb = a.f_lb;
  config.f_lb_certified = !a.f_lb_uncertified;
  config.lambda_upper = a.lambda_upper;
  config.seed = a.seed;
  config.lower_samples = a.samples;
  config.budget = a.budget;
  config.lipschitz = a.lipschitz;
  config.validate();
  return config;
}

int run_minimize(const MinimizeArgs& a) {
  const Objective obj = load_objective(a.problem);
  const ExperimentConfig config = make_config(a, obj);
  const auto points = run_grid(obj, config);

  std::vector<ResultRow> rows;
  for (std::size_t i = 0; i < points.size(); ++i) {
    rows.push_back(points[i].row);
    if (!a.cert_prefix.empty() && points[i].result) {
      const CertificateFile file{points[i].result->cert, points[i].row.delta,
                                 points[i].row.eps};
      write_text_file(a.cert_prefix + "_" + std::to_string(i) + ".json",
                      certificate_to_json(file));
    }
  }
  if (a.out.empty()) {
    write_csv(std::cout, rows);
  } else {
    std::ofstream out(a.out);
    if (!out) throw InputError("cannot write " + a.out);
    write_csv(out, rows);
  }
  return grid_exit_code(rows);
}

int run_linesearch(const std::string& path, double shift, int max_depth) {
  auto h = std::make_shared<const PiecewiseLinear1D>(load_piecewise_linear(path));
  const Univariate u = as_univariate(h, shift);
  const double p = h->left(), q = h->right();
  const double sigma = -(u.value(q) - u.value(p)) / (q - p);
  if (!(sigma > 0)) throw InputError("linesearch: need h(p) > h(q)");
  const double deviation = concave_deviation(second_derivative(*h), p, q);
  const SearchOutcome found = bisect(u, max_depth);
  const double bound = 1.0 + std::floor(2.0 * deviation / sigma);
  std::cout << "t_star,rderiv_at_t,evaluations,bisections,sigma,deviation,bound\n"
            << fmt(found.t_star) << ',' << fmt(found.rderiv_at_t) << ','
            << found.evaluations << ',' << found.bisections << ',' << fmt(sigma)
            << ',' << fmt(deviation) << ',' << fmt(bound) << '\n';
  return found.evaluations <= bound ? 0 : kVerifyError;
}

void print_deviation(const PiecewiseLinear1D& h, double quad_density) {
  const SignedAtomicMeasure measure = second_derivative(h, quad_density);
  const double formula = concave_deviation(measure, h.left(), h.right());
  std::cout << "formula," << fmt(formula) << '\n';
  if (quad_density == 0.0) {
    std::cout << "bruteforce," << fmt(concave_deviation_bruteforce(h)) << '\n';
  }
  std::cout << "lebesgue_density," << fmt(quad_density) << '\n';
  std::cout << "negative_atoms";
  for (const auto& atom : measure.atoms) {
    if (atom.mass < 0) std::cout << ',' << fmt(atom.location) << ':' << fmt(-atom.mass);
  }
  std::cout << '\n';
}

int run_adversary(const std::string& nodes, double budget, double gamma,
                  const std::string& out) {
  AdversarialSpec spec{parse_list(nodes, "--T"), budget, gamma};
  const AdversaryReport cert = certify_adversary(spec);
  if (!out.empty()) {
    write_text_file(out, piecewise_linear_to_json(build_adversarial_h(spec)));
  }
  std::cout << cert.report;
  std::cout << "deviation " << fmt(cert.deviation) << " closed_form "
            << fmt(adversary_deviation_closed_form(spec)) << '\n';
  return cert.report.passed() ? 0 : kVerifyError;
}

int run_bench(const MinimizeArgs& a) {
  const Objective obj = load_objective(a.problem);
  const ExperimentConfig config = make_config(a, obj);
  const auto points = run_grid(obj, config);
  std::vector<ResultRow> rows;
  std::cout << std::left << std::setw(8) << "delta" << std::setw(8) << "eps"
            << std::setw(14) << "lambda_up" << std::setw(14) << "calls"
            << std::setw(16) << "predicted" << std::setw(14) << "ratio"
            << "status\n";
  for (const auto& p : points) {
    const auto& r = p.row;
    rows.push_back(r);
    std::cout << std::setw(8) << r.delta << std::setw(8) << r.eps
              << std::setw(14) << r.lambda_upper << std::setw(14) << r.oracle_calls
              << std::setw(16) << r.predicted_calls << std::setw(14) << r.bound_ratio
              << to_string(r.status) << (r.bound_certified ? "" : " (advisory)")
              << (r.certificate_valid ? "" : " cert-invalid") << '\n';
  }
  if (!a.out.empty()) {
    std::ofstream out(a.out);
    write_csv(out, rows);
  }
  return grid_exit_code(rows);
}

int run_verify(const std::string& problem, const std::string& cert_path,
               std::optional<double> delta, std::optional<double> eps) {
  const Objective obj = load_objective(problem);
  const CertificateFile file = load_certificate(cert_path);
  const Report report = verify_certificate(obj, file.cert.anchor, file.cert,
                                           delta.value_or(file.delta),
                                           eps.value_or(file.eps));
  std::cout << report;
  return report.passed() ? 0 : kVerifyError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic Goldstein-subgradient descent toolkit"};
  app.require_subcommand(1);

  MinimizeArgs min_args;
  auto* cmd_min = app.add_subcommand("minimize", "run the descent over a (delta, eps) grid");
  add_run_options(cmd_min, min_args);
  cmd_min->add_option("--cert-out", min_args.cert_prefix,
                      "write certificates to <prefix>_<row>.json");

  std::string pl_path;
  double shift = 0.0;
  int max_depth = kDefaultMaxDepth;
  auto* cmd_ls = app.add_subcommand("linesearch", "bisection search on a piecewise-linear file");
  cmd_ls->add_option("--pl", pl_path, "piecewise-linear file")->required();
  cmd_ls->add_option("--shift", shift, "subtract shift*t from h");
  cmd_ls->add_option("--max-depth", max_depth, "bisection depth limit");

  std::string dev_pl, dev_problem, dev_z, dev_w;
  double dev_delta = 0.1;
  int dev_samples = 4096;
  std::uint64_t dev_seed = 1;
  auto* cmd_dev = app.add_subcommand("deviation", "concave deviation and modulus bounds");
  cmd_dev->add_option("--pl", dev_pl, "piecewise-linear file");
  cmd_dev->add_option("--problem", dev_problem, "problem file");
  cmd_dev->add_option("--z", dev_z, "segment start (with --problem)");
  cmd_dev->add_option("--w", dev_w, "segment unit direction (with --problem)");
  cmd_dev->add_option("--delta", dev_delta, "segment length");
  cmd_dev->add_option("--samples", dev_samples, "segments sampled for the lower bound");
  cmd_dev->add_option("--seed", dev_seed, "sampling seed");

  std::string adv_nodes, adv_out;
  double adv_m = 1.0, adv_gamma = 0.01;
  auto* cmd_adv = app.add_subcommand("adversary", "build and certify the worst-case search instance");
  cmd_adv->add_option("--T", adv_nodes, "probe points in [0,1), comma separated");
  cmd_adv->add_option("--M", adv_m, "deviation budget M");
  cmd_adv->add_option("--gamma", adv_gamma, "rise half-width");
  cmd_adv->add_option("--out", adv_out, "write the piecewise-linear file here");

  MinimizeArgs bench_args;
  bench_args.epsilons = "0.2,0.1,0.05";
  auto* cmd_bench = app.add_subcommand("bench", "eps sweep: observed vs predicted oracle calls");
  add_run_options(cmd_bench, bench_args);

  std::string ver_problem, ver_cert;
  std::optional<double> ver_delta, ver_eps;
  auto* cmd_ver = app.add_subcommand("verify", "check a certificate file");
  cmd_ver->add_option("--problem", ver_problem, "problem file")->required();
  cmd_ver->add_option("--cert", ver_cert, "certificate file")->required();
  cmd_ver->add_option("--delta", ver_delta, "override delta");
  cmd_ver->add_option("--eps", ver_eps, "override eps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*cmd_min) return run_minimize(min_args);
    if (*cmd_ls) return run_linesearch(pl_path, shift, max_depth);
    if (*cmd_dev) {
      if (!dev_pl.empty()) {
        print_deviation(load_piecewise_linear(dev_pl), 0.0);
        return 0;
      }
      if (dev_problem.empty()) throw InputError("deviation: need --pl or --problem");
      const Objective obj = load_objective(dev_problem);
      if (!dev_z.empty() || !dev_w.empty()) {
        const SegmentRestriction r = restrict_to_segment(
            obj, to_vector(parse_list(dev_z, "--z")),
            to_vector(parse_list(dev_w, "--w")), dev_delta);
        print_deviation(r.h, r.quad_density);
        return 0;
      }
      const ModulusBounds b = modulus_bounds(obj, dev_delta, dev_samples, dev_seed);
      const ModulusUpperBounds ub = modulus_upper_bounds(obj, dev_delta);
      std::cout << "lambda_lower," << fmt(b.lower) << '\n'
                << "lambda_upper," << fmt(b.upper) << '\n'
                << "semilinear_bound," << fmt(ub.semilinear) << '\n'
                << "dc_bound," << fmt(ub.dc) << '\n';
      return 0;
    }
    if (*cmd_adv) return run_adversary(adv_nodes, adv_m, adv_gamma, adv_out);
    if (*cmd_bench) return run_bench(bench_args);
    if (*cmd_ver) return run_verify(ver_problem, ver_cert, ver_delta, ver_eps);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const NonSemismoothSuspected& e) {
    std::cerr << "run error: " << e.what() << '\n';
    return kRunError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRunError;
  }
  return 0;
}
