#include "driftspec/field2d.hpp"

#include "driftspec/errors.hpp"

#include <Eigen/SparseCholesky>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace driftspec {

namespace {

struct CellList {
  std::vector<int> dof;        // nx*ny -> dof or -1
  std::vector<int> ci, cj;     // dof -> cell coordinates
};

CellList cell_list(const RasterDomain& dom) {
  CellList cl;
  cl.dof = dom.dof_map();
  const int n = dom.active_count();
  cl.ci.resize(n);
  cl.cj.resize(n);
  for (int j = 0; j < dom.ny; ++j)
    for (int i = 0; i < dom.nx; ++i) {
      const int d = cl.dof[static_cast<std::size_t>(j) * dom.nx + i];
      if (d >= 0) {
        cl.ci[d] = i;
        cl.cj[d] = j;
      }
    }
  return cl;
}

} // namespace

Eigen::SparseMatrix<double> assemble_vform(const RasterDomain& dom) {
  const CellList cl = cell_list(dom);
  const int n = static_cast<int>(cl.ci.size());
  if (n == 0) throw std::invalid_argument("assemble_vform: empty domain");
  const double inv_h2 = 1.0 / (dom.h * dom.h);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * 5);
  for (int d = 0; d < n; ++d) {
    const int i = cl.ci[d], j = cl.cj[d];
    const Eigen::Vector2d c = dom.cell_center(i, j);
    trip.emplace_back(d, d, 4.0 * inv_h2 + 0.25 * c.squaredNorm());
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    for (int q = 0; q < 4; ++q) {
      const int ni = i + di[q], nj = j + dj[q];
      if (ni < 0 || nj < 0 || ni >= dom.nx || nj >= dom.ny) continue;
      const int nd = cl.dof[static_cast<std::size_t>(nj) * dom.nx + ni];
      if (nd >= 0) trip.emplace_back(d, nd, -inv_h2);
    }
  }
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  return A;
}

std::pair<Eigen::SparseMatrix<double>, Eigen::VectorXd> assemble_uform(const RasterDomain& dom) {
  const CellList cl = cell_list(dom);
  const int n = static_cast<int>(cl.ci.size());
  if (n == 0) throw std::invalid_argument("assemble_uform: empty domain");
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * 5);
  Eigen::VectorXd mass(n);
  auto w = [](double x, double y) { return std::exp(0.5 * (x * x + y * y)); };
  for (int d = 0; d < n; ++d) {
    const int i = cl.ci[d], j = cl.cj[d];
    const Eigen::Vector2d c = dom.cell_center(i, j);
    mass[d] = w(c.x(), c.y()) * dom.h * dom.h;
    double diag = 0.0;
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    for (int q = 0; q < 4; ++q) {
      const int ni = i + di[q], nj = j + dj[q];
      const double wf = w(c.x() + 0.5 * dom.h * di[q], c.y() + 0.5 * dom.h * dj[q]);
      diag += wf;
      if (ni < 0 || nj < 0 || ni >= dom.nx || nj >= dom.ny) continue;
      const int nd = cl.dof[static_cast<std::size_t>(nj) * dom.nx + ni];
      if (nd >= 0) trip.emplace_back(d, nd, -wf);
    }
    trip.emplace_back(d, d, diag);
  }
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  return {A, mass};
}

SparseEigResult smallest_eigenpairs_spd(const Eigen::SparseMatrix<double>& A, int k, double tol,
                                        std::uint64_t seed) {
  const int n = static_cast<int>(A.rows());
  if (k < 1 || k > n) throw std::invalid_argument("smallest_eigenpairs_spd: need 1 <= k <= n");
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(A);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("smallest_eigenpairs_spd: factorization failed", -1.0);
  if ((solver.vectorD().array() <= 0.0).any())
    throw ConvergenceError("smallest_eigenpairs_spd: matrix not positive definite", -1.0);

  const int p = std::min(n, k + 5);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::MatrixXd X(n, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) X(i, j) = unif(rng);

  // residuals are scaled against the operator bound; absolute residuals
  // below eps * ||A|| cannot be reached in double precision
  double bound = 0.0;
  for (int c = 0; c < A.outerSize(); ++c) {
    double row = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) row += std::abs(it.value());
    bound = std::max(bound, row);
  }
  SparseEigResult out;
  Eigen::VectorXd theta(p);
  const int max_iter = 400;
  double worst = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= max_iter; ++it) {
    // power step on A^{-1}
    Eigen::MatrixXd Y = solver.solve(X);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
    // Rayleigh-Ritz on A
    Eigen::MatrixXd AQ = A * Q;
    Eigen::MatrixXd H = Q.transpose() * AQ;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    X = Q * es.eigenvectors();
    AQ = AQ * es.eigenvectors();
    theta = es.eigenvalues();
    worst = 0.0;
    for (int j = 0; j < k; ++j) {
      const double res = (AQ.col(j) - theta[j] * X.col(j)).norm() / bound;
      worst = std::max(worst, res);
    }
    out.iterations = it;
    if (worst <= tol) break;
  }
  if (!(worst <= tol))
    throw ConvergenceError("smallest_eigenpairs_spd: subspace iteration stalled", worst);
  out.values = theta.head(k);
  out.vectors = X.leftCols(k);
  out.residuals.resize(k);
  for (int j = 0; j < k; ++j)
    out.residuals[j] = (A * X.col(j) - theta[j] * X.col(j)).norm() / bound;
  return out;
}

FieldEigen eigenpairs(const RasterDomain& dom, int k, double tol) {
  if (k < 1) throw std::invalid_argument("eigenpairs: k >= 1 required");
  if (k > dom.active_count())
    throw std::invalid_argument("eigenpairs: k exceeds the active cell count");
  const Eigen::SparseMatrix<double> A = assemble_vform(dom);
  const SparseEigResult eig = smallest_eigenpairs_spd(A, k, tol);

  const CellList cl = cell_list(dom);
  const int n = static_cast<int>(cl.ci.size());
  Eigen::VectorXd gauss_quarter(n), meas(n);
  for (int d = 0; d < n; ++d) {
    const Eigen::Vector2d c = dom.cell_center(cl.ci[d], cl.cj[d]);
    gauss_quarter[d] = std::exp(-0.25 * c.squaredNorm());
    meas[d] = dom.cell_measure(cl.ci[d], cl.cj[d]);
  }

  FieldEigen out;
  for (int j = 0; j < k; ++j) {
    SpectrumEntry e;
    e.lambda = eig.values[j] + 1.0;  // nu + N/2, N = 2
    e.ell = -1;
    e.multiplicity = 1;
    e.radial_index = j + 1;
    e.residual = eig.residuals[j];
    out.spectrum.entries.push_back(e);

    GridFunction u;
    u.domain = dom;
    u.values = eig.vectors.col(j).array() * gauss_quarter.array();
    const double nrm = std::sqrt((u.values.array().square() * meas.array()).sum());
    u.values /= nrm;
    Eigen::Index imax;
    u.values.cwiseAbs().maxCoeff(&imax);
    if (u.values[imax] < 0.0) u.values = -u.values;
    out.modes.push_back(std::move(u));
  }
  return out;
}

double lambda1_uform(const RasterDomain& dom, double tol) {
  auto [A, mass] = assemble_uform(dom);
  // scale to the standard form M^{-1/2} A M^{-1/2}
  const Eigen::VectorXd s = mass.array().rsqrt();
  Eigen::SparseMatrix<double> B = s.asDiagonal() * A * s.asDiagonal();
  return smallest_eigenpairs_spd(B, 1, tol).values[0];
}

TorsionField torsion(const RasterDomain& dom) {
  if (dom.active_count() == 0) throw std::invalid_argument("torsion: empty domain");
  Eigen::SparseMatrix<double> A = assemble_vform(dom);
  // v-form of -Delta w - x.grad w = 1: (-Delta + |x|^2/4 + N/2) v = e^{|x|^2/4}
  const int n = static_cast<int>(A.rows());
  Eigen::SparseMatrix<double> I(n, n);
  I.setIdentity();
  A = A + I;  // N/2 = 1
  const CellList cl = cell_list(dom);
  Eigen::VectorXd rhs(n), gauss_quarter(n);
  for (int d = 0; d < n; ++d) {
    const Eigen::Vector2d c = dom.cell_center(cl.ci[d], cl.cj[d]);
    rhs[d] = std::exp(0.25 * c.squaredNorm());
    gauss_quarter[d] = std::exp(-0.25 * c.squaredNorm());
  }
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(A);
  if (solver.info() != Eigen::Success || (solver.vectorD().array() <= 0.0).any())
    throw ConvergenceError("torsion: operator not positive definite on the active set", -1.0);
  const Eigen::VectorXd v = solver.solve(rhs);
  TorsionField out;
  out.domain = dom;
  out.w = v.array() * gauss_quarter.array();
  out.residual = (A * v - rhs).norm() / rhs.norm();
  if (out.residual > 1e-10)
    throw ConvergenceError("torsion: residual above tolerance", out.residual);
  if ((out.w.array() <= 0.0).any())
    throw std::runtime_error("torsion: positivity violated on the active set");
  return out;
}

DominationReport domination_check(const RasterDomain& dom, int k) {
  const FieldEigen eig = eigenpairs(dom, k);
  const TorsionField tf = torsion(dom);
  DominationReport rep;
  rep.modes_checked = k;
  for (int j = 0; j < k; ++j) {
    const double lambda = eig.spectrum.entries[j].lambda;
    const double sup = eig.modes[j].values.cwiseAbs().maxCoeff();
    const double viol =
        (eig.modes[j].values.cwiseAbs() - lambda * sup * tf.w).maxCoeff();
    rep.max_violation = std::max(rep.max_violation, viol);
  }
  return rep;
}

MaxPrincipleReport maximum_principle_check(const RasterDomain& dom, int trials,
                                           std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("maximum_principle_check: trials >= 1 required");
  Eigen::SparseMatrix<double> A = assemble_vform(dom);
  const int n = static_cast<int>(A.rows());
  Eigen::SparseMatrix<double> I(n, n);
  I.setIdentity();
  A = A + I;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(A);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("maximum_principle_check: factorization failed", -1.0);
  const CellList cl = cell_list(dom);
  Eigen::VectorXd gq(n), gq_inv(n);
  for (int d = 0; d < n; ++d) {
    const Eigen::Vector2d c = dom.cell_center(cl.ci[d], cl.cj[d]);
    gq[d] = std::exp(-0.25 * c.squaredNorm());
    gq_inv[d] = std::exp(0.25 * c.squaredNorm());
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  MaxPrincipleReport rep;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd f(n);
    for (int d = 0; d < n; ++d) f[d] = unif(rng);
    const Eigen::VectorXd v = solver.solve((f.array() * gq_inv.array()).matrix());
    const Eigen::VectorXd psi = v.array() * gq.array();
    const double sup = psi.cwiseAbs().maxCoeff();
    const double rel = sup > 0.0 ? psi.minCoeff() / sup : 0.0;
    rep.worst_min_rel = std::min(rep.worst_min_rel, rel);
    if (rel < -1e-10) ++rep.violations;
  }
  return rep;
}

} // namespace driftspec
