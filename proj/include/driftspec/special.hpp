#pragma once

#include <cmath>
#include <stdexcept>

namespace driftspec {

/// Spatial dimension N >= 2 of the ambient space.
class Dimension {
public:
  explicit Dimension(int n) : n_(n) {
    if (n < 2 || n > 64) throw std::domain_error("Dimension: N must satisfy 2 <= N <= 64");
  }
  int value() const { return n_; }

private:
  int n_;
};

/// Gamma(x) for x a positive multiple of 1/2, by the recurrence
/// Gamma(x+1) = x Gamma(x) from Gamma(1) = 1 and Gamma(1/2) = sqrt(pi).
inline double gamma_half_integer(double x) {
  const double twice = 2.0 * x;
  if (!(x > 0.0) || std::nearbyint(twice) != twice)
    throw std::domain_error("gamma_half_integer: need x > 0 with 2x integral");
  const bool integral = std::nearbyint(x) == x;
  double t = integral ? 1.0 : 0.5;
  double g = integral ? 1.0 : std::sqrt(M_PI);
  while (t + 0.5 < x + 0.25) {
    g *= t;
    t += 1.0;
  }
  return g;
}

/// Lebesgue volume of the unit ball, omega_N = pi^{N/2} / Gamma(N/2 + 1).
inline double unit_ball_volume(Dimension N) {
  const double half = 0.5 * N.value();
  return std::pow(M_PI, half) / gamma_half_integer(half + 1.0);
}

/// Bessel function J_nu(x) by its power series; nu must be a nonnegative
/// multiple of 1/2. Accurate for the moderate arguments used here (x <= 20).
inline double bessel_j(double nu, double x) {
  if (x < 0.0) throw std::domain_error("bessel_j: x >= 0 required");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double half_x = 0.5 * x;
  double term = std::pow(half_x, nu) / gamma_half_integer(nu + 1.0);
  double sum = term;
  for (int m = 1; m < 200; ++m) {
    term *= -(half_x * half_x) / (m * (m + nu));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

/// First positive zero j_{nu,1} of J_nu, by scan plus bisection.
inline double bessel_j_first_zero(double nu) {
  double a = nu > 0.0 ? nu : 0.25;
  double fa = bessel_j(nu, a);
  double b = a;
  double fb = fa;
  for (int i = 0; i < 4000; ++i) {
    b = a + 0.05;
    fb = bessel_j(nu, b);
    if (fa > 0.0 && fb <= 0.0) break;
    a = b;
    fa = fb;
  }
  if (!(fa > 0.0 && fb <= 0.0))
    throw std::runtime_error("bessel_j_first_zero: bracketing failed");
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    if (bessel_j(nu, m) > 0.0)
      a = m;
    else
      b = m;
    if (b - a < 1e-15 * b) break;
  }
  return 0.5 * (a + b);
}

} // namespace driftspec
