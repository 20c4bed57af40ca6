#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace driftspec {

/// Gauss-Legendre nodes and weights on [-1, 1], generated at runtime by
/// Newton iteration on the Legendre recurrence.
struct GaussLegendre {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  explicit GaussLegendre(int n) : nodes(n), weights(n) {
    for (int i = 0; i < n; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

namespace detail {
inline const GaussLegendre& gl15() {
  static const GaussLegendre g(15);
  return g;
}
inline const GaussLegendre& gl8() {
  static const GaussLegendre g(8);
  return g;
}
} // namespace detail

/// Fixed-order Gauss-Legendre estimate of int_a^b f.
template <typename F>
double gauss_panel(F&& f, double a, double b, const GaussLegendre& rule) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(c + h * rule.nodes[i]);
  return s * h;
}

/// Adaptive integration of a smooth integrand: each subinterval is accepted
/// once bisecting it no longer changes its GL15 value beyond rel_tol.
template <typename F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-12) {
  if (!(b >= a)) throw std::domain_error("integrate: b >= a required");
  if (a == b) return 0.0;
  const GaussLegendre& rule = detail::gl15();
  struct Seg {
    double a, b, val;
  };
  std::vector<Seg> stack;
  stack.push_back({a, b, gauss_panel(f, a, b, rule)});
  double total = 0.0;
  const double min_width = (b - a) * 0x1p-52;
  long budget = 4000000;
  while (!stack.empty()) {
    if (--budget < 0) throw std::runtime_error("integrate: subdivision budget exhausted");
    const Seg s = stack.back();
    stack.pop_back();
    const double m = 0.5 * (s.a + s.b);
    const double left = gauss_panel(f, s.a, m, rule);
    const double right = gauss_panel(f, m, s.b, rule);
    const double two = left + right;
    if (std::abs(two - s.val) <= rel_tol * std::abs(two) + 1e-300 || (s.b - s.a) < min_width) {
      total += two;
    } else {
      stack.push_back({s.a, m, left});
      stack.push_back({m, s.b, right});
    }
  }
  return total;
}

/// Cumulative integrals of f over a sorted node vector: out[i] = int_{x[0]}^{x[i]} f,
/// one GL8 panel per interval.
template <typename F>
Eigen::VectorXd cumulative_integral(F&& f, const Eigen::VectorXd& x) {
  const GaussLegendre& rule = detail::gl8();
  Eigen::VectorXd out(x.size());
  out[0] = 0.0;
  for (int i = 1; i < x.size(); ++i) out[i] = out[i - 1] + gauss_panel(f, x[i - 1], x[i], rule);
  return out;
}

} // namespace driftspec
