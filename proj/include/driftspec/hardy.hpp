#pragma once

#include "driftspec/profiles.hpp"
#include "driftspec/special.hpp"

namespace driftspec {

// The Hardy weight rho_N(r) = r^{1-N} e^{-r^2/2} / int_r^inf t^{1-N} e^{-t^2/2} dt,
// its ODE rho' + (N-1) rho / r + r rho = rho^2, unique minimum T, truncation
// rho_{N,T}, and the quotient whose infimum over admissible radial profiles
// is the sharp constant 1/4.

struct HardyWeight {
  Dimension N;
  double T = 0.0;     // unique minimizer of rho_N on (0, inf)
  double rhoT = 0.0;  // rho_N(T)
};

double rho(Dimension N, double r);

/// |rho' + (N-1) rho/r + r rho - rho^2| with rho' by central differences.
double ode_residual(Dimension N, double r);

/// Locate T by golden-section search after a unimodality scan.
HardyWeight find_T(Dimension N);

double rho_truncated(const HardyWeight& w, double r);

/// (int u'^2 a dr) / (int u^2 rho_{N,T}^2 a dr) with a = r^{N-1} e^{r^2/2},
/// trapezoid quadrature on the profile's own grid. The profile must vanish
/// at its right end.
double hardy_ratio(const HardyWeight& w, const RadialProfile& u);

struct SharpnessResult {
  RadialProfile profile;
  double ratio;
};

/// The extremal sequence psi_k: constant on (0, 1/k), square root of the tail
/// integral beyond, tapered to zero on [9, 10] to stay admissible, evaluated
/// against rho_N on a log-graded grid over [0, 10].
SharpnessResult sharpness_sequence(Dimension N, long k);

} // namespace driftspec
