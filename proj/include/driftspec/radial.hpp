#pragma once

#include "driftspec/profiles.hpp"
#include "driftspec/special.hpp"
#include "driftspec/spectrum.hpp"
#include "driftspec/tridiag.hpp"

#include <vector>

namespace driftspec {

// Eigenvalue problem -div(e^{|x|^2/2} grad u) = lambda e^{|x|^2/2} u on the
// centered ball B_R, reduced per spherical-harmonic degree ell to the
// one-dimensional pencil -(a u')' + ell(ell+N-2) r^{-2} a u = lambda a u with
// a(r) = r^{N-1} e^{r^2/2}. The oscillator form carries the transform
// v = u e^{r^2/4}, whose eigenvalues satisfy nu = lambda - N/2.

struct RadialOperatorSpec {
  Dimension N;
  int ell = 0;
  double R = 1.0;
  int n = 2048;          // grid cells
  double grading = 0.0;  // mesh exponent toward 0; 0 picks the per-ell default

  double grading_or_default() const { return grading > 0.0 ? grading : (ell == 0 ? 1.0 : 1.2); }
};

enum class RadialForm { Weighted, Oscillator };

struct RadialAssembly {
  TridiagPencil pencil;
  Eigen::VectorXd nodes;  // interior nodes r_1..r_{n-1}
};

/// Self-adjoint finite-volume discretization of one ell-slice.
RadialAssembly assemble(const RadialOperatorSpec& spec, RadialForm form = RadialForm::Weighted);

struct RadialEigenResult {
  Spectrum spectrum;                    // single-ell slice
  std::vector<RadialProfile> profiles;  // with the r=0 and r=R endpoints attached
};

/// k smallest eigenpairs of one ell-slice of the weighted problem.
RadialEigenResult lowest_eigenpairs(const RadialOperatorSpec& spec, int k, double tol);

/// First k eigenvalues of the ball B_R, merging ell-slices with their
/// spherical-harmonic multiplicities.
Spectrum ball_spectrum(Dimension N, double R, int k, double tol = 1e-9, int n = 2048);

/// lambda_1(B_R) with Richardson extrapolation over grids n and 2n.
double lambda1_ball(Dimension N, double R, int n = 2048);

/// Numerical stand-in for lim_{r->inf} lambda_1(B_r): the value at R = 8.
double lambda1_ball_infimum(Dimension N);

/// The radius r~ with lambda_1(B_r~) = lambda_target, by bisection on the
/// strictly decreasing curve. Throws InfeasibleTargetError when the target
/// does not exceed the measured infimum.
double find_radius_for_lambda(Dimension N, double lambda_target);

/// Multiplicity of the degree-ell spherical harmonics in dimension N.
int spherical_harmonic_multiplicity(Dimension N, int ell);

struct SweepResult {
  Eigen::VectorXd radii;
  Eigen::VectorXd values;   // lambda_1(B_r) per sample
  double plateau = 0.0;     // value at the largest radius
};

/// lambda_1(B_r) over an inclusive linear grid of radii.
SweepResult sweep_lambda1(Dimension N, double rmin, double rmax, int steps);

/// Dense sampling of the lowest radial eigenfunction of B_R at eigenvalue
/// lambda, by RK4 integration of z'' = -((N-1)/r + r) z' - lambda z from the
/// regular series start at r = 0. Normalized to z(0) = 1.
RadialProfile eigenfunction_ivp(Dimension N, double lambda, double R, int steps = 200000);

} // namespace driftspec
