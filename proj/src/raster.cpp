#include "driftspec/raster.hpp"

#include "driftspec/errors.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace driftspec {

double RasterDomain::cell_measure(int i, int j) const {
  const Eigen::Vector2d c = cell_center(i, j);
  return std::exp(0.5 * c.squaredNorm()) * h * h;
}

int RasterDomain::active_count() const {
  int n = 0;
  for (auto m : mask) n += m != 0;
  return n;
}

double RasterDomain::total_measure() const {
  double s = 0.0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (active(i, j)) s += cell_measure(i, j);
  return s;
}

double RasterDomain::lebesgue_area() const { return active_count() * h * h; }

std::vector<int> RasterDomain::dof_map() const {
  std::vector<int> map(static_cast<std::size_t>(nx) * ny, -1);
  int next = 0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (active(i, j)) map[static_cast<std::size_t>(j) * nx + i] = next++;
  return map;
}

RasterDomain rasterize_balls(const BallFamilyConfig& config, double h) {
  if (config.count() == 0) throw std::invalid_argument("rasterize_balls: empty configuration");
  if (config.radii.size() != config.centers.size())
    throw std::invalid_argument("rasterize_balls: centers/radii length mismatch");
  if (!(h > 0.0)) throw std::invalid_argument("rasterize_balls: h > 0 required");
  for (double r : config.radii)
    if (!(r > 0.0)) throw std::invalid_argument("rasterize_balls: radii must be positive");
  const int nb = config.count();
  for (int a = 0; a < nb; ++a)
    for (int b = a + 1; b < nb; ++b)
      if (std::abs(config.centers[a] - config.centers[b]) <= config.radii[a] + config.radii[b])
        throw OverlapError("rasterize_balls: balls overlap");

  int anchor = 0;
  for (int a = 1; a < nb; ++a)
    if (config.radii[a] > config.radii[anchor]) anchor = a;
  const double cx = config.centers[anchor];

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double rmax = 0.0;
  for (int a = 0; a < nb; ++a) {
    xmin = std::min(xmin, config.centers[a] - config.radii[a]);
    xmax = std::max(xmax, config.centers[a] + config.radii[a]);
    rmax = std::max(rmax, config.radii[a]);
  }
  // anchor the grid so (cx, 0) is a cell center: keeps the dominant ball's
  // stencil independent of rigid translations of the configuration
  RasterDomain dom;
  dom.h = h;
  const int left = static_cast<int>(std::ceil((cx - (xmin - 2.0 * h)) / h - 0.5));
  const int below = static_cast<int>(std::ceil((0.0 - (-rmax - 2.0 * h)) / h - 0.5));
  dom.x0 = cx - (left + 0.5) * h;
  dom.y0 = 0.0 - (below + 0.5) * h;
  const int right = static_cast<int>(std::ceil((xmax + 2.0 * h - cx) / h - 0.5));
  const int above = static_cast<int>(std::ceil((rmax + 2.0 * h - 0.0) / h - 0.5));
  dom.nx = left + right + 1;
  dom.ny = below + above + 1;
  dom.mask.assign(static_cast<std::size_t>(dom.nx) * dom.ny, 0);
  for (int j = 0; j < dom.ny; ++j)
    for (int i = 0; i < dom.nx; ++i) {
      const Eigen::Vector2d c = dom.cell_center(i, j);
      for (int a = 0; a < nb; ++a) {
        const double dx = c.x() - config.centers[a];
        if (dx * dx + c.y() * c.y() < config.radii[a] * config.radii[a]) {
          dom.mask[static_cast<std::size_t>(j) * dom.nx + i] = 1;
          break;
        }
      }
    }
  if (dom.active_count() == 0) throw std::invalid_argument("rasterize_balls: no active cells");
  return dom;
}

RasterDomain make_disk(const Eigen::Vector2d& center, double radius, double h) {
  if (!(radius > 0.0) || !(h > 0.0)) throw std::invalid_argument("make_disk: bad parameters");
  RasterDomain dom;
  dom.h = h;
  const int half = static_cast<int>(std::ceil((radius + 2.0 * h) / h - 0.5));
  dom.x0 = center.x() - (half + 0.5) * h;
  dom.y0 = center.y() - (half + 0.5) * h;
  dom.nx = dom.ny = 2 * half + 1;
  dom.mask.assign(static_cast<std::size_t>(dom.nx) * dom.ny, 0);
  for (int j = 0; j < dom.ny; ++j)
    for (int i = 0; i < dom.nx; ++i)
      if ((dom.cell_center(i, j) - center).squaredNorm() < radius * radius)
        dom.mask[static_cast<std::size_t>(j) * dom.nx + i] = 1;
  if (dom.active_count() == 0) throw std::invalid_argument("make_disk: no active cells");
  return dom;
}

RasterDomain make_rectangle(double xa, double xb, double ya, double yb, double h) {
  if (!(xb > xa) || !(yb > ya) || !(h > 0.0))
    throw std::invalid_argument("make_rectangle: bad parameters");
  RasterDomain dom;
  dom.h = h;
  dom.x0 = xa - 2.0 * h;
  dom.y0 = ya - 2.0 * h;
  dom.nx = static_cast<int>(std::ceil((xb - xa + 4.0 * h) / h));
  dom.ny = static_cast<int>(std::ceil((yb - ya + 4.0 * h) / h));
  dom.mask.assign(static_cast<std::size_t>(dom.nx) * dom.ny, 0);
  for (int j = 0; j < dom.ny; ++j)
    for (int i = 0; i < dom.nx; ++i) {
      const Eigen::Vector2d c = dom.cell_center(i, j);
      if (c.x() > xa && c.x() < xb && c.y() > ya && c.y() < yb)
        dom.mask[static_cast<std::size_t>(j) * dom.nx + i] = 1;
    }
  if (dom.active_count() == 0) throw std::invalid_argument("make_rectangle: no active cells");
  return dom;
}

RasterDomain make_annulus(double inner, double outer, double h) {
  if (!(outer > inner) || !(inner >= 0.0) || !(h > 0.0))
    throw std::invalid_argument("make_annulus: bad parameters");
  RasterDomain dom = make_disk({0.0, 0.0}, outer, h);
  for (int j = 0; j < dom.ny; ++j)
    for (int i = 0; i < dom.nx; ++i)
      if (dom.active(i, j) && dom.cell_center(i, j).squaredNorm() <= inner * inner)
        dom.mask[static_cast<std::size_t>(j) * dom.nx + i] = 0;
  if (dom.active_count() == 0) throw std::invalid_argument("make_annulus: no active cells");
  return dom;
}

namespace {

std::vector<int> component_labels(const RasterDomain& dom, int& n_components) {
  std::vector<int> label(static_cast<std::size_t>(dom.nx) * dom.ny, -1);
  std::vector<std::size_t> stack;
  n_components = 0;
  for (int j = 0; j < dom.ny; ++j)
    for (int i = 0; i < dom.nx; ++i) {
      const std::size_t idx = static_cast<std::size_t>(j) * dom.nx + i;
      if (dom.mask[idx] == 0 || label[idx] >= 0) continue;
      const int comp = n_components++;
      stack.push_back(idx);
      label[idx] = comp;
      while (!stack.empty()) {
        const std::size_t cur = stack.back();
        stack.pop_back();
        const int ci = static_cast<int>(cur % dom.nx);
        const int cj = static_cast<int>(cur / dom.nx);
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          const int ni = ci + di[d], nj = cj + dj[d];
          if (ni < 0 || nj < 0 || ni >= dom.nx || nj >= dom.ny) continue;
          const std::size_t nidx = static_cast<std::size_t>(nj) * dom.nx + ni;
          if (dom.mask[nidx] != 0 && label[nidx] < 0) {
            label[nidx] = comp;
            stack.push_back(nidx);
          }
        }
      }
    }
  return label;
}

} // namespace

int component_count(const RasterDomain& dom) {
  int n = 0;
  component_labels(dom, n);
  return n;
}

std::vector<RasterDomain> split_components(const RasterDomain& dom) {
  int n = 0;
  const std::vector<int> label = component_labels(dom, n);
  std::vector<RasterDomain> parts(n, dom);
  for (int c = 0; c < n; ++c)
    for (std::size_t idx = 0; idx < label.size(); ++idx)
      parts[c].mask[idx] = label[idx] == c ? 1 : 0;
  return parts;
}

RasterDomain parse_mask(std::istream& in) {
  RasterDomain dom;
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("mask parse error: missing header");
  std::istringstream hs(header);
  if (!(hs >> dom.nx >> dom.ny >> dom.x0 >> dom.y0 >> dom.h))
    throw std::runtime_error("mask parse error: bad header");
  std::string rest;
  if (hs >> rest) throw std::runtime_error("mask parse error: trailing header fields");
  if (dom.nx <= 0 || dom.ny <= 0 || !(dom.h > 0.0))
    throw std::runtime_error("mask parse error: bad grid parameters");
  if (static_cast<long long>(dom.nx) * dom.ny > 100000000LL)
    throw std::runtime_error("mask parse error: grid too large");
  dom.mask.assign(static_cast<std::size_t>(dom.nx) * dom.ny, 0);
  for (int j = 0; j < dom.ny; ++j) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("mask parse error: missing data line");
    if (static_cast<int>(line.size()) != dom.nx)
      throw std::runtime_error("mask parse error: wrong line length");
    for (int i = 0; i < dom.nx; ++i) {
      if (line[i] == '1')
        dom.mask[static_cast<std::size_t>(j) * dom.nx + i] = 1;
      else if (line[i] != '0')
        throw std::runtime_error("mask parse error: unknown character");
    }
  }
  if (dom.active_count() == 0) throw std::runtime_error("mask parse error: no active cells");
  return dom;
}

RasterDomain parse_mask_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("mask parse error: cannot open " + path);
  return parse_mask(in);
}

void write_mask(std::ostream& out, const RasterDomain& dom) {
  char header[256];
  std::snprintf(header, sizeof(header), "%d %d %.17g %.17g %.17g\n", dom.nx, dom.ny, dom.x0,
                dom.y0, dom.h);
  out << header;
  for (int j = 0; j < dom.ny; ++j) {
    std::string line(dom.nx, '0');
    for (int i = 0; i < dom.nx; ++i)
      if (dom.active(i, j)) line[i] = '1';
    out << line << '\n';
  }
}

} // namespace driftspec
