#include "goldstein/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "goldstein/errors.hpp"

namespace goldstein {
namespace {

void require_dim(const Objective& obj, const Vector& v, const char* what) {
  if (v.size() != obj.dim()) {
    throw InputError(std::string(what) + " has length " +
                     std::to_string(v.size()) + ", expected " +
                     std::to_string(obj.dim()));
  }
}

double term_max(const SignedMaxAffine& term, const Vector& x) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& piece : term.pieces) {
    best = std::max(best, piece.a.dot(x) + piece.beta);
  }
  return best;
}

double quadratic_dot(const Objective& obj, const Vector& x, const Vector& e) {
  if (!obj.has_quadratic()) return 0.0;
  return (obj.quadratic() * x).dot(e);
}

}  // namespace

Objective::Objective(int dim, Matrix q, Vector b,
                     std::vector<SignedMaxAffine> terms)
    : dim_(dim), q_(std::move(q)), b_(std::move(b)), terms_(std::move(terms)) {
  if (dim_ < 1 || dim_ > kMaxDim) {
    throw InputError("dim must lie in [1, " + std::to_string(kMaxDim) +
                     "], got " + std::to_string(dim_));
  }
  if (q_.size() == 0) q_ = Matrix::Zero(dim_, dim_);
  if (b_.size() == 0) b_ = Vector::Zero(dim_);
  if (q_.rows() != dim_ || q_.cols() != dim_) {
    throw InputError("Q must be " + std::to_string(dim_) + "x" +
                     std::to_string(dim_));
  }
  if (b_.size() != dim_) {
    throw InputError("b must have length " + std::to_string(dim_));
  }
  for (int i = 0; i < dim_; ++i) {
    for (int j = i + 1; j < dim_; ++j) {
      if (std::abs(q_(i, j) - q_(j, i)) > kSymmetryTolerance) {
        throw InputError("Q is not symmetric at (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
      }
    }
  }
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    const auto& term = terms_[j];
    const std::string where = "term " + std::to_string(j);
    if (term.sign != 1 && term.sign != -1) {
      throw InputError(where + ": sign must be +1 or -1");
    }
    if (term.pieces.empty()) throw InputError(where + ": no pieces");
    if (term.pieces.size() > static_cast<std::size_t>(kMaxPiecesPerTerm)) {
      throw InputError(where + ": more than " +
                       std::to_string(kMaxPiecesPerTerm) + " pieces");
    }
    for (const auto& piece : term.pieces) {
      if (piece.a.size() != dim_) {
        throw InputError(where + ": piece vector length mismatch");
      }
      if (!piece.a.allFinite() || !std::isfinite(piece.beta)) {
        throw InputError(where + ": non-finite piece data");
      }
    }
  }
  if (!q_.allFinite() || !b_.allFinite()) {
    throw InputError("non-finite Q or b");
  }
  has_quadratic_ = !q_.isZero(0.0);
}

int select_piece(const SignedMaxAffine& term, const Vector& x,
                 const Vector& e) {
  const double vmax = term_max(term, x);
  const double tol = activity_tolerance(vmax);
  int best = -1;
  double best_slope = 0.0;
  for (std::size_t i = 0; i < term.pieces.size(); ++i) {
    const auto& piece = term.pieces[i];
    if (vmax - (piece.a.dot(x) + piece.beta) > tol) continue;
    const double slope = piece.a.dot(e);
    if (best < 0 || slope > best_slope) {
      best = static_cast<int>(i);
      best_slope = slope;
    }
  }
  return best;
}

double eval(const Objective& obj, const Vector& x) {
  require_dim(obj, x, "x");
  double value = obj.linear().dot(x);
  if (obj.has_quadratic()) value += 0.5 * x.dot(obj.quadratic() * x);
  for (const auto& term : obj.terms()) value += term.sign * term_max(term, x);
  return value;
}

double eval(const Objective& obj, const Vector& x, CallCounter& counter) {
  ++counter.value_only_calls;
  return eval(obj, x);
}

double dir_derivative(const Objective& obj, const Vector& x, const Vector& e) {
  require_dim(obj, x, "x");
  require_dim(obj, e, "e");
  double d = quadratic_dot(obj, x, e) + obj.linear().dot(e);
  for (const auto& term : obj.terms()) {
    const int i = select_piece(term, x, e);
    d += term.sign * term.pieces[i].a.dot(e);
  }
  return d;
}

OracleResponse oracle_query(const Objective& obj, const Vector& x,
                            const Vector& e, CallCounter& counter) {
  require_dim(obj, x, "x");
  require_dim(obj, e, "e");
  ++counter.oracle_calls;

  OracleResponse out;
  out.value = eval(obj, x);
  out.subgrad = obj.linear();
  if (obj.has_quadratic()) out.subgrad += obj.quadratic() * x;
  double d = quadratic_dot(obj, x, e) + obj.linear().dot(e);
  double scale = out.subgrad.norm();
  for (const auto& term : obj.terms()) {
    const Vector& a = term.pieces[select_piece(term, x, e)].a;
    d += term.sign * a.dot(e);
    if (term.sign > 0) {
      out.subgrad += a;
    } else {
      out.subgrad -= a;
    }
    scale += a.norm();
  }
  out.dderiv = d;

  const double residual = std::abs(out.subgrad.dot(e) - out.dderiv);
  if (!(residual <= 1e-9 * (1.0 + e.norm() * scale))) {
    throw std::logic_error("oracle: <G(x,e), e> disagrees with f'(x;e)");
  }
  return out;
}

double terms_lipschitz(const Objective& obj) {
  double total = 0.0;
  for (const auto& term : obj.terms()) {
    double best = 0.0;
    for (const auto& piece : term.pieces) best = std::max(best, piece.a.norm());
    total += best;
  }
  return total;
}

double concave_part_lipschitz(const Objective& obj) {
  double total = 0.0;
  for (const auto& term : obj.terms()) {
    if (term.sign > 0) continue;
    double best = 0.0;
    for (const auto& piece : term.pieces) best = std::max(best, piece.a.norm());
    total += best;
  }
  return total;
}

double lipschitz_bound(const Objective& obj, double radius,
                       const Vector& center) {
  require_dim(obj, center, "center");
  if (radius < 0) throw InputError("radius must be nonnegative");
  double q_norm = 0.0;
  if (obj.has_quadratic()) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(obj.quadratic(),
                                                 Eigen::EigenvaluesOnly);
    // Padding covers the eigensolver's backward error.
    q_norm = solver.eigenvalues().cwiseAbs().maxCoeff() +
             1e-13 * obj.quadratic().norm();
  }
  return terms_lipschitz(obj) + q_norm * (center.norm() + radius) +
         obj.linear().norm();
}

double weak_convexity_modulus(const Objective& obj) {
  if (!obj.has_quadratic()) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(obj.quadratic(),
                                               Eigen::EigenvaluesOnly);
  const double lambda_min = solver.eigenvalues().minCoeff();
  return std::max(0.0, -lambda_min);
}

}  // namespace goldstein
