#include "driftspec/measure.hpp"

#include "driftspec/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace driftspec {

double shell_density(Dimension N, double r) {
  if (r < 0.0) throw std::domain_error("shell_density: r >= 0 required");
  const int n = N.value();
  return n * unit_ball_volume(N) * std::exp(0.5 * r * r) * std::pow(r, n - 1);
}

namespace detail {
double ball_volume_quadrature(Dimension N, double r) {
  return integrate([N](double t) { return shell_density(N, t); }, 0.0, r, 1e-12);
}
} // namespace detail

double ball_volume(Dimension N, double r) {
  if (r < 0.0) throw std::domain_error("ball_volume: r >= 0 required");
  if (r == 0.0) return 0.0;
  if (N.value() == 2) return 2.0 * M_PI * std::expm1(0.5 * r * r);
  return detail::ball_volume_quadrature(N, r);
}

double radius_of_volume(Dimension N, double s) {
  if (s < 0.0) throw std::domain_error("radius_of_volume: s >= 0 required");
  if (s == 0.0) return 0.0;
  if (N.value() == 2) return std::sqrt(2.0 * std::log1p(s / (2.0 * M_PI)));

  double hi = 1.0;
  while (ball_volume(N, hi) < s) {
    hi *= 2.0;
    if (hi > 64.0) break;
  }
  double lo = 0.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (ball_volume(N, mid) < s)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13 * (1.0 + hi)) break;
  }
  double r = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double h = shell_density(N, r);
    if (h <= 0.0) break;
    r -= (ball_volume(N, r) - s) / h;
    if (r <= lo || r >= hi) {
      r = 0.5 * (lo + hi);
      break;
    }
  }
  return r;
}

double isoperimetric_profile(Dimension N, double s) {
  if (s <= 0.0) throw std::domain_error("isoperimetric_profile: s > 0 required");
  return shell_density(N, radius_of_volume(N, s));
}

namespace {

double offcenter_ball_volume_fixed(double c, double rho, int m) {
  // int_0^rho int_0^{2pi} exp((c^2 + 2 s c cos(theta) + s^2)/2) s dtheta ds
  const GaussLegendre rule(m);
  const double half_rho = 0.5 * rho;
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    const double s = half_rho * (rule.nodes[i] + 1.0);
    double inner = 0.0;
    for (int j = 0; j < m; ++j) {
      const double theta = M_PI * (rule.nodes[j] + 1.0);
      inner += rule.weights[j] * std::exp(0.5 * (c * c + 2.0 * s * c * std::cos(theta) + s * s));
    }
    total += rule.weights[i] * s * inner * M_PI;
  }
  return total * half_rho;
}

} // namespace

double offcenter_ball_volume(const Eigen::Vector2d& center, double rho) {
  if (!(rho > 0.0)) throw std::domain_error("offcenter_ball_volume: rho > 0 required");
  const double c = center.norm();
  int m = 64;
  double prev = offcenter_ball_volume_fixed(c, rho, m);
  for (int round = 0; round < 5; ++round) {
    m *= 2;
    const double next = offcenter_ball_volume_fixed(c, rho, m);
    if (std::abs(next - prev) <= 1e-10 * std::abs(next)) return next;
    prev = next;
  }
  return prev;
}

} // namespace driftspec
