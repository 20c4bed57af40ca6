#pragma once

#include "driftspec/special.hpp"

#include <Eigen/Dense>

namespace driftspec {

/// Nonincreasing function of the measure variable s in [0, total_measure].
/// Step: values[i] on [breaks[i], breaks[i+1]), with breaks.size() == values.size()+1.
/// Nodal: values at the breaks, linear in between, breaks.size() == values.size().
/// Either way the function is 0 beyond the last break.
struct MonotoneProfile {
  enum class Kind { Step, Nodal };
  Kind kind = Kind::Step;
  Eigen::VectorXd breaks;
  Eigen::VectorXd values;
  double total_measure = 0.0;

  double value_at(double s) const;
  /// int_0^{s_hi} |value|^p ds
  double integral_pow(double p, double s_hi) const;
  double sup() const;
};

/// Radial function on [r.front(), r.back()].
/// Nodal: v.size() == r.size(); Step: v[i] on (r[i], r[i+1]), v.size() == r.size()-1.
struct RadialProfile {
  enum class Kind { Nodal, Step };
  Kind kind = Kind::Nodal;
  Eigen::VectorXd r;
  Eigen::VectorXd v;
  int dim = 2;
};

/// ||f||_{L^p(m_N)} of a radial profile, exact per shell for step profiles.
double norm_mN(const RadialProfile& f, double p);

} // namespace driftspec
