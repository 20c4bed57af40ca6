#pragma once

#include "driftspec/raster.hpp"

#include <json.hpp>

#include <vector>

namespace driftspec {

// Desk-scale search for minimizers of lambda_k under m_2(Omega) <= c over
// families of disjoint balls with centers on the x-axis. The constraint is
// kept active: lambda_k improves with measure on this family.

struct ObjectiveSpec {
  int k = 1;
  double c = 1.0;   // weighted-volume budget
  double h = 1.0 / 64.0;  // raster cell size for off-center components
};

/// Scale all radii by a common factor so the total m_2-volume equals c to
/// 1e-8 relative; centers unchanged. Flags the result infeasible when the
/// scaling breaks disjointness.
BallFamilyConfig project_to_constraint(const BallFamilyConfig& config, double c);

/// lambda_k of the disjoint union: merged component spectra, centered balls
/// through the radial solver, off-center balls through the raster solver.
/// Infeasible configurations return a large penalty value.
double objective(const BallFamilyConfig& config, const ObjectiveSpec& spec);

struct NelderMeadResult {
  BallFamilyConfig best;
  double value = 0.0;
  int evaluations = 0;
  bool budget_exhausted = false;
  std::vector<double> trace;  // best value after each accepted step
};

/// Standard reflect/expand/contract/shrink simplex over (centers, radii),
/// projecting onto the volume constraint before every evaluation.
NelderMeadResult nelder_mead(const ObjectiveSpec& spec, const BallFamilyConfig& init, double tol,
                             int max_evals = 500);

/// The k = 2 shape experiment: tabulates lambda_2 for a single centered ball,
/// two identical balls at optimized separation, two unequal optimized balls,
/// and a centered annulus; emits the ranked report.
nlohmann::json experiment_k2(double c, double h);

} // namespace driftspec
