#include "driftspec/shapeopt.hpp"

#include "driftspec/errors.hpp"
#include "driftspec/field2d.hpp"
#include "driftspec/measure.hpp"
#include "driftspec/radial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace driftspec {

namespace {

double total_volume(const BallFamilyConfig& cfg, double scale) {
  double s = 0.0;
  for (int i = 0; i < cfg.count(); ++i)
    s += offcenter_ball_volume({cfg.centers[i], 0.0}, scale * cfg.radii[i]);
  return s;
}

bool disjoint(const BallFamilyConfig& cfg) {
  for (int a = 0; a < cfg.count(); ++a)
    for (int b = a + 1; b < cfg.count(); ++b)
      if (std::abs(cfg.centers[a] - cfg.centers[b]) <= cfg.radii[a] + cfg.radii[b]) return false;
  return true;
}

double overlap_depth(const BallFamilyConfig& cfg) {
  double depth = 0.0;
  for (int a = 0; a < cfg.count(); ++a)
    for (int b = a + 1; b < cfg.count(); ++b)
      depth += std::max(0.0, cfg.radii[a] + cfg.radii[b] -
                                 std::abs(cfg.centers[a] - cfg.centers[b]));
  return depth;
}

} // namespace

BallFamilyConfig project_to_constraint(const BallFamilyConfig& config, double c) {
  if (config.count() < 1) throw std::invalid_argument("project_to_constraint: empty family");
  if (!(c > 0.0)) throw std::invalid_argument("project_to_constraint: c > 0 required");
  for (double r : config.radii)
    if (!(r > 0.0)) throw std::invalid_argument("project_to_constraint: radii must be positive");
  double lo = 0.0, hi = 1.0;
  while (total_volume(config, hi) < c) hi *= 2.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (total_volume(config, mid) < c)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-13 * hi) break;
  }
  const double t = 0.5 * (lo + hi);
  BallFamilyConfig out = config;
  for (double& r : out.radii) r *= t;
  out.feasible = disjoint(out);
  return out;
}

double objective(const BallFamilyConfig& config, const ObjectiveSpec& spec) {
  if (spec.k < 1) throw std::invalid_argument("objective: k >= 1 required");
  if (!config.feasible) return 1e6 + 1e3 * overlap_depth(config);
  std::vector<double> merged;
  const Dimension N(2);
  for (int i = 0; i < config.count(); ++i) {
    if (std::abs(config.centers[i]) <= 1e-12) {
      const Spectrum s = ball_spectrum(N, config.radii[i], spec.k);
      for (const auto& e : s.entries)
        for (int m = 0; m < e.multiplicity; ++m) merged.push_back(e.lambda);
    } else {
      BallFamilyConfig one;
      one.centers = {config.centers[i]};
      one.radii = {config.radii[i]};
      RasterDomain dom = rasterize_balls(one, spec.h);
      const int want = std::min(spec.k, dom.active_count());
      const FieldEigen fe = eigenpairs(dom, want, 1e-9);
      for (const auto& e : fe.spectrum.entries) merged.push_back(e.lambda);
    }
  }
  std::sort(merged.begin(), merged.end());
  if (static_cast<int>(merged.size()) < spec.k)
    throw std::runtime_error("objective: not enough eigenvalues across components");
  return merged[spec.k - 1];
}

NelderMeadResult nelder_mead(const ObjectiveSpec& spec, const BallFamilyConfig& init, double tol,
                             int max_evals) {
  const int nb = init.count();
  if (nb < 1) throw std::invalid_argument("nelder_mead: empty family");
  const int dim = 2 * nb;

  int evals = 0;
  NelderMeadResult result;
  auto decode = [&](const Eigen::VectorXd& x) {
    BallFamilyConfig cfg;
    cfg.centers.assign(x.data(), x.data() + nb);
    cfg.radii.resize(nb);
    for (int i = 0; i < nb; ++i) cfg.radii[i] = std::max(std::abs(x[nb + i]), 1e-4);
    return project_to_constraint(cfg, spec.c);
  };
  double best_value = std::numeric_limits<double>::infinity();
  BallFamilyConfig best_cfg;
  auto f = [&](const Eigen::VectorXd& x) {
    ++evals;
    const BallFamilyConfig cfg = decode(x);
    const double v = objective(cfg, spec);
    if (v < best_value) {
      best_value = v;
      best_cfg = cfg;
      result.trace.push_back(v);
    }
    return v;
  };

  Eigen::VectorXd x0(dim);
  for (int i = 0; i < nb; ++i) x0[i] = init.centers[i];
  for (int i = 0; i < nb; ++i) x0[nb + i] = init.radii[i];
  std::vector<Eigen::VectorXd> xs(dim + 1, x0);
  std::vector<double> fs(dim + 1);
  for (int j = 1; j <= dim; ++j)
    xs[j][j - 1] += (std::abs(x0[j - 1]) > 0.05 ? 0.25 * std::abs(x0[j - 1]) : 0.1);
  for (int j = 0; j <= dim; ++j) fs[j] = f(xs[j]);

  const double alpha = 1.0, gamma = 2.0, beta = 0.5, delta = 0.5;
  while (evals < max_evals) {
    std::vector<int> order(dim + 1);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    std::vector<Eigen::VectorXd> xs2(dim + 1);
    std::vector<double> fs2(dim + 1);
    for (int j = 0; j <= dim; ++j) {
      xs2[j] = xs[order[j]];
      fs2[j] = fs[order[j]];
    }
    xs.swap(xs2);
    fs.swap(fs2);
    if (fs[dim] - fs[0] < tol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (int j = 0; j < dim; ++j) centroid += xs[j];
    centroid /= dim;

    const Eigen::VectorXd xr = centroid + alpha * (centroid - xs[dim]);
    const double fr = f(xr);
    if (fr < fs[0]) {
      const Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
      const double fe = f(xe);
      if (fe < fr) {
        xs[dim] = xe;
        fs[dim] = fe;
      } else {
        xs[dim] = xr;
        fs[dim] = fr;
      }
    } else if (fr < fs[dim - 1]) {
      xs[dim] = xr;
      fs[dim] = fr;
    } else {
      const bool outside = fr < fs[dim];
      const Eigen::VectorXd xc =
          outside ? centroid + beta * (xr - centroid) : centroid + beta * (xs[dim] - centroid);
      const double fc = f(xc);
      if (fc < (outside ? fr : fs[dim])) {
        xs[dim] = xc;
        fs[dim] = fc;
      } else {
        for (int j = 1; j <= dim; ++j) {
          xs[j] = xs[0] + delta * (xs[j] - xs[0]);
          fs[j] = f(xs[j]);
          if (evals >= max_evals) break;
        }
      }
    }
  }
  result.best = best_cfg;
  result.value = best_value;
  result.evaluations = evals;
  result.budget_exhausted = evals >= max_evals;
  return result;
}

namespace {

// lambda_2 of two identical balls at +-d with total volume c, through the
// union raster; block decoupling makes it the component's lambda_1.
double two_equal_lambda2(double d, double c, double h, BallFamilyConfig* out_cfg) {
  BallFamilyConfig cfg;
  cfg.centers = {-d, d};
  cfg.radii = {1.0, 1.0};
  cfg = project_to_constraint(cfg, c);
  if (!cfg.feasible) return 1e6 + 1e3 * overlap_depth(cfg);
  if (out_cfg) *out_cfg = cfg;
  RasterDomain dom = rasterize_balls(cfg, h);
  return eigenpairs(dom, 2, 1e-9).spectrum.kth(2);
}

double golden_min(const std::function<double(double)>& f, double a, double b, double tol,
                  double* fmin) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  if (fmin) *fmin = std::min(f1, f2);
  return 0.5 * (a + b);
}

} // namespace

nlohmann::json experiment_k2(double c, double h) {
  if (!(c > 0.0) || !(h > 0.0)) throw std::invalid_argument("experiment_k2: bad parameters");
  const Dimension N(2);
  nlohmann::json configs = nlohmann::json::array();

  // (a) single centered ball of volume c
  const double r_full = radius_of_volume(N, c);
  const Spectrum sa = ball_spectrum(N, r_full, 2);
  configs.push_back({{"name", "single_centered_ball"},
                     {"params", {{"radius", r_full}}},
                     {"lambda_k", sa.kth(2)}});

  // (b) two identical balls, separation optimized
  const double r_half = radius_of_volume(N, 0.5 * c);
  double f_b = 0.0;
  BallFamilyConfig cfg_b;
  const double d_b = golden_min(
      [&](double d) { return two_equal_lambda2(d, c, h, nullptr); }, 1.05 * r_half, 2.5, 5e-3,
      &f_b);
  f_b = two_equal_lambda2(d_b, c, h, &cfg_b);
  // block-decoupling identity: the union's lambda_2 equals the second entry
  // of the merged per-component spectra, solved on the same grid
  RasterDomain union_dom = rasterize_balls(cfg_b, h);
  std::vector<double> comp_merged;
  for (const auto& comp : split_components(union_dom)) {
    const FieldEigen fc = eigenpairs(comp, 2, 1e-9);
    comp_merged.push_back(fc.spectrum.kth(1));
    comp_merged.push_back(fc.spectrum.kth(2));
  }
  std::sort(comp_merged.begin(), comp_merged.end());
  configs.push_back({{"name", "two_equal_balls"},
                     {"params",
                      {{"separation", d_b},
                       {"radius", cfg_b.radii[0]},
                       {"component_merged_lambda2", comp_merged[1]},
                       {"centered_half_ball_lambda1", lambda1_ball(N, r_half)}}},
                     {"lambda_k", f_b}});

  // (c) two unequal balls, radii ratio and positions optimized
  BallFamilyConfig init_c;
  init_c.centers = {-1.1, 1.1};
  init_c.radii = {1.0, 0.6};
  ObjectiveSpec spec_c{2, c, h};
  const NelderMeadResult nm = nelder_mead(spec_c, init_c, 1e-4, 160);
  configs.push_back({{"name", "two_unequal_balls"},
                     {"params",
                      {{"centers", nm.best.centers},
                       {"radii", nm.best.radii},
                       {"evaluations", nm.evaluations}}},
                     {"lambda_k", nm.value}});

  // (d) centered annulus, inner radius optimized
  auto annulus_lambda2 = [&](double a) {
    const double b = radius_of_volume(N, c + ball_volume(N, a));
    RasterDomain dom = make_annulus(a, b, h);
    return eigenpairs(dom, 2, 1e-9).spectrum.kth(2);
  };
  double f_d = 0.0;
  const double a_d = golden_min(annulus_lambda2, 4.0 * h, 0.8 * r_full, 5e-3, &f_d);
  f_d = annulus_lambda2(a_d);
  configs.push_back({{"name", "centered_annulus"},
                     {"params",
                      {{"inner_radius", a_d},
                       {"outer_radius", radius_of_volume(N, c + ball_volume(N, a_d))}}},
                     {"lambda_k", f_d}});

  std::vector<std::pair<double, std::string>> ranked;
  for (const auto& cfg : configs)
    ranked.push_back({cfg["lambda_k"].get<double>(), cfg["name"].get<std::string>()});
  std::sort(ranked.begin(), ranked.end());
  nlohmann::json ranked_names = nlohmann::json::array();
  for (const auto& [v, name] : ranked) ranked_names.push_back(name);

  return {{"experiment", "k2"}, {"c", c}, {"h", h}, {"configs", configs},
          {"ranked", ranked_names}};
}

} // namespace driftspec
