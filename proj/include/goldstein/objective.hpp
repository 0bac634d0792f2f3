#pragma once

// Objectives of the form
//
//   f(x) = 0.5 x'Qx + b'x + sum_j s_j * max_i (a_ji . x + beta_ji),  s_j = +-1
//
// together with exact directional calculus and a directional subgradient
// oracle returning (f(x), f'(x;e), G(x,e)) with <G(x,e), e> = f'(x;e).

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace goldstein {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr int kMaxDim = 64;
inline constexpr int kMaxPiecesPerTerm = 256;
inline constexpr double kSymmetryTolerance = 1e-12;

struct AffinePiece {
  Vector a;
  double beta = 0.0;
};

struct SignedMaxAffine {
  int sign = 1;
  std::vector<AffinePiece> pieces;
};

// Immutable after construction; safe to share across threads.
class Objective {
 public:
  // Throws InputError when dimensions disagree, Q is not symmetric, a term
  // is empty, a sign is not +-1, or size limits are exceeded. An empty Q or
  // b means zero.
  Objective(int dim, Matrix q, Vector b, std::vector<SignedMaxAffine> terms);

  int dim() const { return dim_; }
  const Matrix& quadratic() const { return q_; }
  const Vector& linear() const { return b_; }
  const std::vector<SignedMaxAffine>& terms() const { return terms_; }
  bool has_quadratic() const { return has_quadratic_; }

 private:
  int dim_;
  Matrix q_;
  Vector b_;
  std::vector<SignedMaxAffine> terms_;
  bool has_quadratic_;
};

struct OracleResponse {
  double value = 0.0;
  double dderiv = 0.0;
  Vector subgrad;
};

// Per-run mutable state. Never share one counter between concurrent runs.
struct CallCounter {
  std::uint64_t oracle_calls = 0;
  std::uint64_t value_only_calls = 0;
};

// A piece is term-active when its value is within this of the term max.
inline double activity_tolerance(double term_max) {
  return 1e-9 * (1.0 + (term_max < 0 ? -term_max : term_max));
}

double eval(const Objective& obj, const Vector& x);

// Counts one value-only call.
double eval(const Objective& obj, const Vector& x, CallCounter& counter);

double dir_derivative(const Objective& obj, const Vector& x, const Vector& e);

// Termwise argmax selection; ties among active pieces go to the lowest
// index. With e = 0 every term picks its first active piece.
OracleResponse oracle_query(const Objective& obj, const Vector& x,
                            const Vector& e, CallCounter& counter);

// Upper bound on |G(x,e)| over the closed ball B_radius(center).
double lipschitz_bound(const Objective& obj, double radius,
                       const Vector& center);

// sum_j max_i |a_ji| over all terms.
double terms_lipschitz(const Objective& obj);

// sum_j max_i |a_ji| over the sign -1 terms only (the concave part).
double concave_part_lipschitz(const Objective& obj);

// max(0, -lambda_min(Q)).
double weak_convexity_modulus(const Objective& obj);

// Index of the piece a term contributes at x in direction e.
int select_piece(const SignedMaxAffine& term, const Vector& x, const Vector& e);

}  // namespace goldstein
