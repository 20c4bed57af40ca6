#pragma once

// Independent numerical oracles used only by the test suite. These must not
// share code paths with the library implementations they check.

#include "driftspec/special.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

/// Composite Simpson rule with n subintervals (n even).
inline double simpson(const std::function<double(double)>& f, double a, double b, long n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (long i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Midpoint rule over the bounding square of a disk, counting inside points.
inline double disk_weighted_volume_midpoint(double cx, double cy, double rho, long points) {
  const long m = static_cast<long>(std::lround(std::sqrt(static_cast<double>(points))));
  const double h = 2.0 * rho / m;
  double sum = 0.0;
  for (long j = 0; j < m; ++j)
    for (long i = 0; i < m; ++i) {
      const double x = cx - rho + (i + 0.5) * h;
      const double y = cy - rho + (j + 0.5) * h;
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) < rho * rho)
        sum += std::exp(0.5 * (x * x + y * y));
    }
  return sum * h * h;
}

/// Pruefer-phase shooting for the lowest radial eigenvalue (ell = 0) of
/// -(a u')' = lambda a u on (0, R), a = r^{N-1} e^{r^2/2}, u'(0) = u(R) = 0.
/// Integrates theta' = cos^2(theta)/a + lambda a sin^2(theta) from theta = pi/2
/// and bisects lambda on theta(R) = pi.
inline double pruefer_lambda1(int N, double R, int steps = 40000) {
  auto phase_end = [&](double lambda) {
    const double r0 = 1e-8 * R;
    double theta = 0.5 * M_PI;
    const double h = (R - r0) / steps;
    auto dtheta = [&](double r, double th) {
      const double a = std::pow(r, N - 1) * std::exp(0.5 * r * r);
      const double c = std::cos(th), s = std::sin(th);
      return c * c / a + lambda * a * s * s;
    };
    double r = r0;
    for (int i = 0; i < steps; ++i) {
      const double k1 = dtheta(r, theta);
      const double k2 = dtheta(r + 0.5 * h, theta + 0.5 * h * k1);
      const double k3 = dtheta(r + 0.5 * h, theta + 0.5 * h * k2);
      const double k4 = dtheta(r + h, theta + h * k3);
      theta += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      r += h;
    }
    return theta;
  };
  double lo = N, hi = N + 4.0;
  while (phase_end(hi) < M_PI) hi *= 2.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (phase_end(mid) < M_PI)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-12 * hi) break;
  }
  return 0.5 * (lo + hi);
}

/// Secant iteration for the radius with f(r) = target; f strictly decreasing.
inline double secant_root(const std::function<double(double)>& f, double target, double r0,
                          double r1, double tol) {
  double f0 = f(r0) - target;
  double f1 = f(r1) - target;
  for (int it = 0; it < 60; ++it) {
    const double r2 = r1 - f1 * (r1 - r0) / (f1 - f0);
    r0 = r1;
    f0 = f1;
    r1 = r2;
    f1 = f(r1) - target;
    if (std::abs(f1) < tol) break;
  }
  return r1;
}

/// Grid-scan minimizer of rho_N over a log grid on [1e-3, 10], with rho
/// evaluated through backward-accumulated tail integrals (independent of the
/// library's adaptive quadrature path).
inline double rho_grid_scan_argmin(int N, long points) {
  std::vector<double> r(points);
  for (long i = 0; i < points; ++i)
    r[i] = 1e-3 * std::pow(10.0 / 1e-3, static_cast<double>(i) / (points - 1));
  auto g = [&](double t) { return std::pow(t, 1.0 - N) * std::exp(-0.5 * t * t); };
  // Simpson per panel, accumulated from the far end
  std::vector<double> tail(points);
  tail[points - 1] = simpson(g, 10.0, 22.0, 4000);
  for (long i = points - 2; i >= 0; --i)
    tail[i] = tail[i + 1] + simpson(g, r[i], r[i + 1], 8);
  long best = 0;
  double best_rho = 1e300;
  for (long i = 0; i < points; ++i) {
    const double v = g(r[i]) / tail[i];
    if (v < best_rho) {
      best_rho = v;
      best = i;
    }
  }
  if (best == 0 || best == points - 1)
    throw std::runtime_error("rho_grid_scan_argmin: minimum at scan edge");
  return r[best];
}

} // namespace oracles
