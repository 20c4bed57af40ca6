#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace driftspec {

/// A disjoint family of balls with centers on the x-axis; the shape-search
/// variable and the input to rasterization.
struct BallFamilyConfig {
  std::vector<double> centers;  // abscissae on the x-axis
  std::vector<double> radii;    // > 0
  bool feasible = true;         // cleared when a projection breaks disjointness

  int count() const { return static_cast<int>(centers.size()); }
};

/// Cell-centered boolean mask over a bounding box; the computational
/// stand-in for an open set. Cell (i, j) has center
/// (x0 + (i+1/2) h, y0 + (j+1/2) h).
struct RasterDomain {
  int nx = 0, ny = 0;
  double x0 = 0.0, y0 = 0.0, h = 0.0;
  std::vector<std::uint8_t> mask;  // row-major, index j*nx + i

  bool active(int i, int j) const { return mask[static_cast<std::size_t>(j) * nx + i] != 0; }
  Eigen::Vector2d cell_center(int i, int j) const {
    return {x0 + (i + 0.5) * h, y0 + (j + 0.5) * h};
  }
  /// m_2 measure of one cell: e^{|c|^2/2} h^2 at the cell center.
  double cell_measure(int i, int j) const;

  int active_count() const;
  double total_measure() const;
  double lebesgue_area() const;

  /// dof index per cell in row-major scan order of active cells, -1 outside
  std::vector<int> dof_map() const;
};

/// Mask of cells whose centers lie in the union of the balls; bounding box
/// padded by 2h and anchored so the largest ball's center falls on a cell
/// center. Throws OverlapError when balls intersect.
RasterDomain rasterize_balls(const BallFamilyConfig& config, double h);

RasterDomain make_disk(const Eigen::Vector2d& center, double radius, double h);
RasterDomain make_rectangle(double xa, double xb, double ya, double yb, double h);
RasterDomain make_annulus(double inner, double outer, double h);

/// Number of 4-connected components of the active set.
int component_count(const RasterDomain& dom);

/// Split into per-component domains on the same grid (same nx, ny, origin, h).
std::vector<RasterDomain> split_components(const RasterDomain& dom);

// Mask file format: line 1 "nx ny x0 y0 h", then ny lines of nx characters
// from {0,1}; data line j holds the cells centered at y = y0 + (j+1/2) h.
RasterDomain parse_mask(std::istream& in);
RasterDomain parse_mask_file(const std::string& path);
void write_mask(std::ostream& out, const RasterDomain& dom);

} // namespace driftspec
