#include "driftspec/radial.hpp"

#include "driftspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace driftspec {

namespace {

Eigen::VectorXd graded_nodes(double R, int n, double gamma) {
  Eigen::VectorXd r(n + 1);
  for (int i = 0; i <= n; ++i) r[i] = R * std::pow(static_cast<double>(i) / n, gamma);
  return r;
}

double weight_a(int N, double r) { return std::pow(r, N - 1) * std::exp(0.5 * r * r); }

} // namespace

RadialAssembly assemble(const RadialOperatorSpec& spec, RadialForm form) {
  if (spec.n < 16) throw std::invalid_argument("assemble: n >= 16 required");
  if (!(spec.R > 0.0)) throw std::invalid_argument("assemble: R > 0 required");
  if (spec.ell < 0) throw std::invalid_argument("assemble: ell >= 0 required");
  const int N = spec.N.value();
  const int n = spec.n;
  const Eigen::VectorXd r = graded_nodes(spec.R, n, spec.grading_or_default());
  const int m = n - 1;  // interior unknowns r_1..r_{n-1}; Dirichlet at r_n = R

  const bool osc = form == RadialForm::Oscillator;
  auto p = [&](double x) { return osc ? std::pow(x, N - 1) : weight_a(N, x); };
  const double cent = static_cast<double>(spec.ell) * (spec.ell + N - 2);

  RadialAssembly out;
  out.nodes = r.segment(1, m);
  out.pencil.diag.resize(m);
  out.pencil.off.resize(m - 1);
  out.pencil.mass.resize(m);
  for (int i = 1; i <= m; ++i) {
    const double hl = r[i] - r[i - 1];
    const double hr = r[i + 1] - r[i];
    const double pl = p(0.5 * (r[i - 1] + r[i]));
    const double pr = p(0.5 * (r[i] + r[i + 1]));
    const double d = 0.5 * (r[i + 1] - r[i - 1]);
    const double w = osc ? std::pow(r[i], N - 1) : weight_a(N, r[i]);
    double diag = pr / hr;
    // left closure at the origin: zero flux for ell = 0 (u'(0) = 0), pinned
    // value for ell >= 1 (u(0) = 0); ordinary flux elsewhere
    if (i > 1 || spec.ell >= 1) diag += pl / hl;
    double pot = cent / (r[i] * r[i]);
    if (osc) pot += 0.25 * r[i] * r[i];
    diag += pot * w * d;
    out.pencil.diag[i - 1] = diag;
    if (i < m) out.pencil.off[i - 1] = -pr / hr;
    out.pencil.mass[i - 1] = w * d;
  }
  return out;
}

int spherical_harmonic_multiplicity(Dimension N, int ell) {
  if (ell < 0) throw std::invalid_argument("multiplicity: ell >= 0 required");
  if (ell == 0) return 1;
  const int n = N.value();
  if (n == 2) return 2;
  // (2 ell + N - 2) * prod_{j=1}^{N-3} (ell + j) / (N - 2)!
  double v = 2.0 * ell + n - 2;
  for (int j = 1; j <= n - 3; ++j) v *= ell + j;
  for (int j = 2; j <= n - 2; ++j) v /= j;
  return static_cast<int>(std::lround(v));
}

RadialEigenResult lowest_eigenpairs(const RadialOperatorSpec& spec, int k, double tol) {
  if (k < 1) throw std::invalid_argument("lowest_eigenpairs: k >= 1 required");
  if (!(tol > 0.0)) throw std::invalid_argument("lowest_eigenpairs: tol > 0 required");
  const RadialAssembly asmb = assemble(spec, RadialForm::Weighted);
  const TridiagEigenPairs pairs = smallest_eigenpairs(asmb.pencil, k, tol);

  RadialEigenResult out;
  const int m = static_cast<int>(asmb.nodes.size());
  for (int j = 0; j < k; ++j) {
    SpectrumEntry e;
    e.lambda = pairs.values[j];
    e.ell = spec.ell;
    e.multiplicity = spherical_harmonic_multiplicity(spec.N, spec.ell);
    e.radial_index = j + 1;
    e.residual = pairs.residuals[j];
    out.spectrum.entries.push_back(e);

    RadialProfile prof;
    prof.dim = spec.N.value();
    prof.kind = RadialProfile::Kind::Nodal;
    prof.r.resize(m + 2);
    prof.v.resize(m + 2);
    prof.r[0] = 0.0;
    prof.r.segment(1, m) = asmb.nodes;
    prof.r[m + 1] = spec.R;
    prof.v.segment(1, m) = pairs.vectors.col(j);
    // regularity at the origin: flat for ell = 0, pinned for ell >= 1
    if (spec.ell == 0) {
      const double r1 = asmb.nodes[0];
      const double corr = 1.0 - pairs.values[j] * r1 * r1 / (2.0 * spec.N.value());
      prof.v[0] = corr != 0.0 ? pairs.vectors(0, j) / corr : pairs.vectors(0, j);
    } else {
      prof.v[0] = 0.0;
    }
    prof.v[m + 1] = 0.0;
    out.profiles.push_back(std::move(prof));
  }
  return out;
}

Spectrum ball_spectrum(Dimension N, double R, int k, double tol, int n) {
  if (k < 1) throw std::invalid_argument("ball_spectrum: k >= 1 required");
  Spectrum merged;
  double kth_candidate = std::numeric_limits<double>::infinity();
  for (int ell = 0; ell <= 256; ++ell) {
    RadialOperatorSpec spec{N, ell, R, n};
    const RadialAssembly asmb = assemble(spec, RadialForm::Weighted);
    const int want = std::min<int>(k, static_cast<int>(asmb.pencil.diag.size()));
    const TridiagEigenPairs pairs = smallest_eigenpairs(asmb.pencil, want, tol, true);
    if (ell > 0 && merged.total_multiplicity() >= k && pairs.values[0] > kth_candidate) break;
    const int mult = spherical_harmonic_multiplicity(N, ell);
    for (int j = 0; j < want; ++j)
      merged.entries.push_back({pairs.values[j], mult, ell, j + 1, pairs.residuals[j]});
    std::sort(merged.entries.begin(), merged.entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.lambda < b.lambda; });
    if (merged.total_multiplicity() >= k) kth_candidate = merged.kth(k);
  }
  // trim entries past the k-th counting multiplicity
  Spectrum out;
  int seen = 0;
  for (const auto& e : merged.entries) {
    if (seen >= k) break;
    out.entries.push_back(e);
    seen += e.multiplicity;
  }
  return out;
}

double lambda1_ball(Dimension N, double R, int n) {
  if (!(R > 0.0)) throw std::domain_error("lambda1_ball: R > 0 required");
  RadialOperatorSpec coarse{N, 0, R, n};
  RadialOperatorSpec fine{N, 0, R, 2 * n};
  const double lc = smallest_eigenpairs(assemble(coarse).pencil, 1, 1e-9, true).values[0];
  const double lf = smallest_eigenpairs(assemble(fine).pencil, 1, 1e-9, true).values[0];
  return (4.0 * lf - lc) / 3.0;
}

double lambda1_ball_infimum(Dimension N) { return lambda1_ball(N, 8.0); }

double find_radius_for_lambda(Dimension N, double lambda_target) {
  const double inf = lambda1_ball_infimum(N);
  if (!(lambda_target > inf))
    throw InfeasibleTargetError("find_radius_for_lambda: target at or below the measured "
                                "infimum of lambda1(B_r)",
                                inf);
  double lo = 1.0;
  while (lambda1_ball(N, lo) <= lambda_target) {
    lo *= 0.5;
    if (lo < 1e-4)
      throw InfeasibleTargetError("find_radius_for_lambda: no bracketing radius found", inf);
  }
  double hi = 8.0;
  double mid = lo;
  for (int it = 0; it < 80; ++it) {
    mid = 0.5 * (lo + hi);
    const double lam = lambda1_ball(N, mid);
    if (std::abs(lam - lambda_target) <= 1e-8 * std::max(1.0, std::abs(lambda_target))) return mid;
    if (lam > lambda_target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-12 * hi) break;
  }
  const double lam = lambda1_ball(N, mid);
  if (std::abs(lam - lambda_target) > 1e-7 * std::max(1.0, std::abs(lambda_target)))
    throw ConvergenceError("find_radius_for_lambda: bisection stalled",
                           std::abs(lam - lambda_target));
  return mid;
}

SweepResult sweep_lambda1(Dimension N, double rmin, double rmax, int steps) {
  if (!(0.0 < rmin && rmin < rmax)) throw std::invalid_argument("sweep_lambda1: need 0 < rmin < rmax");
  if (steps < 2) throw std::invalid_argument("sweep_lambda1: steps >= 2 required");
  SweepResult out;
  out.radii.resize(steps);
  out.values.resize(steps);
  for (int i = 0; i < steps; ++i) {
    out.radii[i] = rmin + (rmax - rmin) * i / (steps - 1);
    out.values[i] = lambda1_ball(N, out.radii[i]);
  }
  out.plateau = out.values[steps - 1];
  return out;
}

RadialProfile eigenfunction_ivp(Dimension N, double lambda, double R, int steps) {
  if (!(R > 0.0)) throw std::domain_error("eigenfunction_ivp: R > 0 required");
  if (steps < 100) throw std::invalid_argument("eigenfunction_ivp: steps >= 100 required");
  const int n = N.value();
  const double h = R / steps;
  RadialProfile prof;
  prof.dim = n;
  prof.kind = RadialProfile::Kind::Nodal;
  prof.r.resize(steps + 1);
  prof.v.resize(steps + 1);

  auto rhs = [&](double r, double z, double w) {
    // z' = w, w' = -((N-1)/r + r) w - lambda z
    return -((n - 1.0) / r + r) * w - lambda * z;
  };
  // series start: z = 1 - lambda r^2/(2N) + O(r^4)
  double r0 = h;
  double z = 1.0 - lambda * r0 * r0 / (2.0 * n);
  double w = -lambda * r0 / n;
  prof.r[0] = 0.0;
  prof.v[0] = 1.0;
  prof.r[1] = r0;
  prof.v[1] = z;
  for (int i = 1; i < steps; ++i) {
    const double r = prof.r[i];
    const double k1z = w, k1w = rhs(r, z, w);
    const double k2z = w + 0.5 * h * k1w, k2w = rhs(r + 0.5 * h, z + 0.5 * h * k1z, w + 0.5 * h * k1w);
    const double k3z = w + 0.5 * h * k2w, k3w = rhs(r + 0.5 * h, z + 0.5 * h * k2z, w + 0.5 * h * k2w);
    const double k4z = w + h * k3w, k4w = rhs(r + h, z + h * k3z, w + h * k3w);
    z += h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
    w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    prof.r[i + 1] = (i + 1) * h;
    prof.v[i + 1] = z;
  }
  return prof;
}

} // namespace driftspec
