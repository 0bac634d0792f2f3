#pragma once

#include <stdexcept>
#include <string>

namespace goldstein {

// Malformed input: bad dimensions, unparsable files, infeasible parameters.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bisection shrank its interval below the depth limit without finding a
// negative right derivative. Either the restriction is not semismooth or
// floating-point resolution ran out.
class NonSemismoothSuspected : public std::runtime_error {
 public:
  NonSemismoothSuspected(double left, double right, int evaluations)
      : std::runtime_error("bisection exhausted its depth limit on [" +
                           std::to_string(left) + ", " +
                           std::to_string(right) + "]"),
        left_(left),
        right_(right),
        evaluations_(evaluations) {}

  double left() const { return left_; }
  double right() const { return right_; }
  int evaluations() const { return evaluations_; }

 private:
  double left_;
  double right_;
  int evaluations_;
};

}  // namespace goldstein
