#pragma once

#include "driftspec/special.hpp"

#include <Eigen/Dense>

namespace driftspec {

// Geometry of the measure dm_N = e^{|x|^2/2} dx. Centered balls have the
// one-dimensional volume element h(r) = N omega_N e^{r^2/2} r^{N-1} and
// cumulative volume H(r); both are strictly increasing in r.

/// h(r) = N omega_N e^{r^2/2} r^{N-1}, the weighted perimeter of B_r.
double shell_density(Dimension N, double r);

/// H(r) = int_0^r h. Closed form for N = 2, adaptive quadrature otherwise.
double ball_volume(Dimension N, double r);

/// Inverse of ball_volume: the radius r with H(r) = s, to 1e-10 relative.
double radius_of_volume(Dimension N, double s);

/// Isoperimetric profile I(s) = h(H^{-1}(s)), s > 0.
double isoperimetric_profile(Dimension N, double s);

/// m_2-volume of a ball B(center, rho) not necessarily centered at the
/// origin, by tensor Gauss-Legendre in polar coordinates about the center.
double offcenter_ball_volume(const Eigen::Vector2d& center, double rho);

namespace detail {
/// Quadrature path of H(r), valid for every N; exposed for cross-checks.
double ball_volume_quadrature(Dimension N, double r);
} // namespace detail

} // namespace driftspec
