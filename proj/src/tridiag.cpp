#include "driftspec/tridiag.hpp"

#include "driftspec/errors.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace driftspec {

namespace {

// Number of eigenvalues of the standard tridiagonal (d, e) strictly below x,
// from the inertia of the LDL^T factorization of T - x I.
int count_below(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double x) {
  const int n = static_cast<int>(d.size());
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int count = 0;
  double t = d[0] - x;
  if (std::abs(t) < tiny) t = -tiny;
  if (t < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    t = d[i] - x - e[i - 1] * e[i - 1] / t;
    if (std::abs(t) < tiny) t = -tiny;
    if (t < 0.0) ++count;
  }
  return count;
}

// y = (T - s I) x for the standard tridiagonal (d, e).
Eigen::VectorXd apply_shifted(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double s,
                              const Eigen::VectorXd& x) {
  const int n = static_cast<int>(d.size());
  Eigen::VectorXd y = (d.array() - s) * x.array();
  for (int i = 0; i < n - 1; ++i) {
    y[i] += e[i] * x[i + 1];
    y[i + 1] += e[i] * x[i];
  }
  return y;
}

// Solve (T - sigma I) x = rhs in place with partial pivoting.
void shifted_solve(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double sigma,
                   Eigen::VectorXd& x) {
  const int n = static_cast<int>(d.size());
  Eigen::VectorXd a(n), b(n), c(n), f(n);
  f.setZero();
  for (int i = 0; i < n; ++i) a[i] = d[i] - sigma;
  for (int i = 0; i + 1 < n; ++i) {
    b[i] = e[i];
    c[i] = e[i];
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(c[i]) > std::abs(a[i])) {
      std::swap(a[i], c[i]);
      std::swap(b[i], a[i + 1]);
      if (i + 2 < n) {
        f[i] = b[i + 1];
        b[i + 1] = 0.0;
      }
      std::swap(x[i], x[i + 1]);
    }
    if (a[i] == 0.0) a[i] = std::numeric_limits<double>::min();
    const double m = c[i] / a[i];
    a[i + 1] -= m * b[i];
    if (i + 2 < n) b[i + 1] -= m * f[i];
    x[i + 1] -= m * x[i];
  }
  if (a[n - 1] == 0.0) a[n - 1] = std::numeric_limits<double>::min();
  x[n - 1] /= a[n - 1];
  if (n >= 2) x[n - 2] = (x[n - 2] - b[n - 2] * x[n - 1]) / a[n - 2];
  for (int i = n - 3; i >= 0; --i) x[i] = (x[i] - b[i] * x[i + 1] - f[i] * x[i + 2]) / a[i];
}

} // namespace

TridiagEigenPairs smallest_eigenpairs(const TridiagPencil& pencil, int k, double tol,
                                      bool values_only, std::uint64_t seed) {
  const int n = static_cast<int>(pencil.diag.size());
  if (k < 1 || k > n) throw std::invalid_argument("smallest_eigenpairs: need 1 <= k <= n");
  if ((pencil.mass.array() <= 0.0).any())
    throw std::invalid_argument("smallest_eigenpairs: mass must be positive");

  // standard form B = M^{-1/2} A M^{-1/2}
  const Eigen::VectorXd ms = pencil.mass.array().sqrt();
  Eigen::VectorXd d = pencil.diag.array() / pencil.mass.array();
  Eigen::VectorXd e(n > 1 ? n - 1 : 0);
  for (int i = 0; i + 1 < n; ++i) e[i] = pencil.off[i] / (ms[i] * ms[i + 1]);

  double lo = d[0], hi = d[0];
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(e[i - 1]);
    if (i + 1 < n) r += std::abs(e[i]);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});

  TridiagEigenPairs out;
  out.values.resize(k);
  out.residuals = Eigen::VectorXd::Zero(k);
  for (int j = 0; j < k; ++j) {
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      if (count_below(d, e, m) <= j)
        a = m;
      else
        b = m;
      if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * scale) break;
    }
    out.values[j] = 0.5 * (a + b);
  }

  // Inverse iteration plus a Rayleigh-quotient polish; the polish is what
  // brings eigenvalues below the eps*||B|| resolution of plain bisection.
  out.vectors.resize(n, values_only ? 0 : k);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const double sep = 1e-8 * scale;
  Eigen::MatrixXd basis(n, k);
  for (int j = 0; j < k; ++j) {
    const double lam_bisect = out.values[j];
    const double sigma = lam_bisect + 1e-12 * scale;
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = unif(rng);
    x.normalize();
    double best = std::numeric_limits<double>::infinity();
    double best_lam = lam_bisect;
    Eigen::VectorXd bestx = x;
    for (int it = 0; it < 16; ++it) {
      shifted_solve(d, e, sigma, x);
      for (int p = 0; p < j; ++p) {
        if (std::abs(out.values[p] - lam_bisect) < sep) x -= basis.col(p).dot(x) * basis.col(p);
      }
      const double nx = x.norm();
      if (!(nx > 0.0) || !std::isfinite(nx)) {
        for (int i = 0; i < n; ++i) x[i] = unif(rng);
        x.normalize();
        continue;
      }
      x /= nx;
      const double rq = x.dot(apply_shifted(d, e, 0.0, x));
      // backward-relative residual: absolute residuals below eps * ||B||
      // are not representable, so scale by the Gershgorin bound
      const double res = apply_shifted(d, e, rq, x).norm() / scale;
      if (res < best) {
        best = res;
        best_lam = rq;
        bestx = x;
      }
      if (res <= 1e-15 || (res <= 0.05 * tol && it >= 2)) break;
    }
    // one Gram-Schmidt pass pins pairwise M-orthogonality at machine level
    for (int p = 0; p < j; ++p) bestx -= basis.col(p).dot(bestx) * basis.col(p);
    bestx.normalize();
    best_lam = bestx.dot(apply_shifted(d, e, 0.0, bestx));
    best = apply_shifted(d, e, best_lam, bestx).norm() / scale;
    if (!(best <= tol))
      throw ConvergenceError("smallest_eigenpairs: inverse iteration stalled", best);
    out.values[j] = best_lam;
    out.residuals[j] = best;
    basis.col(j) = bestx;
    if (!values_only) {
      Eigen::VectorXd v = bestx.array() / ms.array();
      int lead = 0;
      while (lead + 1 < n && std::abs(v[lead]) < 1e-14 * v.norm()) ++lead;
      if (v[lead] < 0.0) v = -v;
      out.vectors.col(j) = v;
    }
  }
  // bisection already orders eigenvalues; the polish may perturb ties
  for (int j = 1; j < k; ++j) {
    int p = j;
    while (p > 0 && out.values[p] < out.values[p - 1]) {
      std::swap(out.values[p], out.values[p - 1]);
      std::swap(out.residuals[p], out.residuals[p - 1]);
      if (!values_only) out.vectors.col(p).swap(out.vectors.col(p - 1));
      --p;
    }
  }
  return out;
}

} // namespace driftspec
