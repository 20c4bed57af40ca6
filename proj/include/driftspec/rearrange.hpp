#pragma once

#include "driftspec/profiles.hpp"
#include "driftspec/raster.hpp"

#include <utility>

namespace driftspec {

/// Values on the active cells of a raster domain, in dof_map order.
struct GridFunction {
  RasterDomain domain;
  Eigen::VectorXd values;
};

/// mu(t) = m_2({ |u| > t }), the distribution function. Nonincreasing and
/// right-continuous in t.
double distribution_function(const GridFunction& u, double t);

/// Decreasing rearrangement u* with respect to m_2, stored exactly as a step
/// function (sorted cell values against cumulative cell measures).
MonotoneProfile decreasing_rearrangement(const GridFunction& u);

/// Star-symmetrization u*(H(|x|)): the radial step function on the centered
/// ball of equal measure, one shell per rearrangement step.
RadialProfile symmetrize(const GridFunction& u);

/// Hardy-Littlewood pair: lhs = int |u v| dm_2, rhs = int_0^m u* v* ds.
std::pair<double, double> hardy_littlewood_check(const GridFunction& u, const GridFunction& v);

struct PolyaReport {
  double grid_energy = 0.0;         // int |grad u|^2 dm_2, five-point face weights
  double symmetrized_energy = 0.0;  // radial energy of the symmetrized profile
  double slack_rel = 0.0;           // max(0, symmetrized - grid) / grid
  double h = 0.0;
};

/// Polya-Szego comparison for u >= 0 vanishing at the mask boundary layer.
/// The symmetrized energy is evaluated on a measure-binned reconstruction to
/// keep the rearrangement's cell-level jitter out of the difference quotients.
PolyaReport polya_szego_check(const GridFunction& u);

double grid_dirichlet_energy(const GridFunction& u);

} // namespace driftspec
