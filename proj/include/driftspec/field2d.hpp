#pragma once

#include "driftspec/raster.hpp"
#include "driftspec/rearrange.hpp"
#include "driftspec/spectrum.hpp"

#include <Eigen/Sparse>

#include <cstdint>
#include <vector>

namespace driftspec {

// Planar solver for the drift operator on rasterized domains through the
// oscillator transform v = u e^{|x|^2/4}: five-point discretization of
// -Delta + |x|^2/4 with Dirichlet exterior, eigenvalues nu_j = lambda_j - 1.

/// Standard-form matrix of -Delta + |x|^2/4 on the active cells.
Eigen::SparseMatrix<double> assemble_vform(const RasterDomain& dom);

/// Weighted form: stiffness with face-centered weights e^{|x_f|^2/2} against
/// the diagonal mass e^{|x_c|^2/2} h^2. Returns (A, mass diagonal).
std::pair<Eigen::SparseMatrix<double>, Eigen::VectorXd> assemble_uform(const RasterDomain& dom);

struct SparseEigResult {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  Eigen::VectorXd residuals;
  int iterations = 0;
};

/// k smallest eigenpairs of a sparse SPD matrix by subspace iteration on the
/// Cholesky-factored inverse with Rayleigh-Ritz projection.
SparseEigResult smallest_eigenpairs_spd(const Eigen::SparseMatrix<double>& A, int k, double tol,
                                        std::uint64_t seed = 0x5eed);

struct FieldEigen {
  Spectrum spectrum;              // lambda_j = nu_j + 1
  std::vector<GridFunction> modes;  // u_j = v_j e^{-|x|^2/4}, m_2-normalized
};

FieldEigen eigenpairs(const RasterDomain& dom, int k, double tol = 1e-9);

/// lambda_1 through the weighted-form assembly; cross-check path only.
double lambda1_uform(const RasterDomain& dom, double tol = 1e-9);

struct TorsionField {
  RasterDomain domain;
  Eigen::VectorXd w;  // positive on active cells
  double residual = 0.0;
};

/// Solution of -Delta w - x . grad w = 1 with Dirichlet exterior.
TorsionField torsion(const RasterDomain& dom);

struct DominationReport {
  int modes_checked = 0;
  double max_violation = 0.0;  // max over cells and j of |u_j| - lambda_j ||u_j||_inf w
};

/// Pointwise check |u_j| <= lambda_j ||u_j||_inf w for j <= k.
DominationReport domination_check(const RasterDomain& dom, int k);

struct MaxPrincipleReport {
  int trials = 0;
  double worst_min_rel = 0.0;  // most negative min(psi)/||psi||_inf seen
  int violations = 0;          // trials with min below -1e-10 ||psi||_inf
};

/// Random nonnegative loads f; solves the drift problem and checks psi >= 0.
MaxPrincipleReport maximum_principle_check(const RasterDomain& dom, int trials,
                                           std::uint64_t seed = 42);

} // namespace driftspec
