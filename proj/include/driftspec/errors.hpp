#pragma once

#include <stdexcept>
#include <string>

namespace driftspec {

/// An iterative solver ran out of budget before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

private:
  double best_residual_;
};

/// Requested eigenvalue lies at or below the measured infimum of the
/// lambda1(B_r) curve, so no ball radius can match it.
class InfeasibleTargetError : public std::runtime_error {
public:
  InfeasibleTargetError(const std::string& what, double measured_infimum)
      : std::runtime_error(what), infimum_(measured_infimum) {}
  double measured_infimum() const { return infimum_; }

private:
  double infimum_;
};

/// Ball family with overlapping members where disjointness is required.
class OverlapError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace driftspec
