#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace driftspec {

/// Symmetric tridiagonal stiffness A against a positive diagonal mass M.
struct TridiagPencil {
  Eigen::VectorXd diag;  // A diagonal, size n
  Eigen::VectorXd off;   // A off-diagonal, size n-1
  Eigen::VectorXd mass;  // M diagonal, size n, strictly positive
};

struct TridiagEigenPairs {
  Eigen::VectorXd values;     // nondecreasing
  Eigen::MatrixXd vectors;    // column j: j-th eigenvector, M-orthonormal
  Eigen::VectorXd residuals;  // backward-relative: ||A v - lambda M v|| / (||B|| ||v||_M)
};

/// k smallest generalized eigenvalues of (A, M) by Sturm-sequence bisection
/// (LDL^T inertia counts) on the mass-scaled standard form, eigenvectors by
/// inverse iteration. Throws ConvergenceError when a residual stays above tol.
TridiagEigenPairs smallest_eigenpairs(const TridiagPencil& pencil, int k, double tol,
                                      bool values_only = false, std::uint64_t seed = 0x5eed);

} // namespace driftspec
