// Acceptance suite: one check per headline property, each printed as a
// single pass/fail line with its measured numbers. Returns the number of
// failed criteria.

#include "driftspec/chiti.hpp"
#include "driftspec/errors.hpp"
#include "driftspec/field2d.hpp"
#include "driftspec/hardy.hpp"
#include "driftspec/measure.hpp"
#include "driftspec/radial.hpp"
#include "driftspec/rearrange.hpp"
#include "driftspec/shapeopt.hpp"
#include "driftspec/special.hpp"
#include "driftspec/tridiag.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace driftspec;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, double seconds,
            double budget_seconds = 0.0) {
  if (budget_seconds > 0.0 && seconds >= budget_seconds) pass = false;
  std::printf("[%s] criterion %d: %s (%.1fs%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
              seconds, budget_seconds > 0.0 ? " within budget" : "");
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double now_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

std::vector<RasterDomain> random_domains(int count, double h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<RasterDomain> out;
  while (static_cast<int>(out.size()) < count) {
    const int kind = static_cast<int>(out.size()) % 3;
    try {
      if (kind == 0) {
        const double cx = 1.2 * (unif(rng) - 0.5), cy = 1.2 * (unif(rng) - 0.5);
        const double R = 0.3 + 0.4 * unif(rng);
        out.push_back(make_disk({cx, cy}, R, h));
      } else if (kind == 1) {
        BallFamilyConfig two;
        const double d = 0.8 + 0.6 * unif(rng);
        two.centers = {-d, d};
        two.radii = {0.25 + 0.3 * unif(rng), 0.25 + 0.3 * unif(rng)};
        out.push_back(rasterize_balls(two, h));
      } else {
        const double x0 = -0.8 + 0.6 * unif(rng), y0 = -0.8 + 0.6 * unif(rng);
        out.push_back(make_rectangle(x0, x0 + 0.5 + unif(rng), y0, y0 + 0.5 + unif(rng), h));
      }
    } catch (const OverlapError&) {
      // resample
    }
  }
  return out;
}

void criterion1_sandwich() {
  const double t0 = now_seconds();
  bool pass = true;
  char detail[256] = "";
  double worst_cert = 0.0;
  for (int N : {2, 3}) {
    const Dimension dn(N);
    const double j0 = bessel_j_first_zero(0.5 * N - 1.0);
    for (double R : {0.5, 1.0, 2.0}) {
      const int n = 2048;
      const double lc =
          smallest_eigenpairs(assemble({dn, 0, R, n}).pencil, 1, 1e-9, true).values[0];
      const double lf =
          smallest_eigenpairs(assemble({dn, 0, R, 2 * n}).pencil, 1, 1e-9, true).values[0];
      const double lam = (4.0 * lf - lc) / 3.0;
      const double lo = 0.5 * N + j0 * j0 / (R * R);
      const double hi = lo + 0.25 * R * R;
      const double cert = std::abs(lf - lc) / 3.0;
      worst_cert = std::max(worst_cert, cert);
      if (!(lam >= lo && lam <= hi) || !(cert < 1e-6)) {
        pass = false;
        std::snprintf(detail, sizeof(detail), "N=%d R=%.2g lambda=%.8g not in [%.8g, %.8g]", N, R,
                      lam, lo, hi);
      }
    }
  }
  if (pass)
    std::snprintf(detail, sizeof(detail),
                  "6 cases inside the Bessel sandwich, Richardson certificate %.2g < 1e-6",
                  worst_cert);
  report(1, pass, detail, now_seconds() - t0, 10.0);
}

void criterion2_sweep() {
  const double t0 = now_seconds();
  const SweepResult sw = sweep_lambda1(Dimension(2), 0.25, 8.0, 40);
  bool decreasing = true;
  for (int i = 1; i < 40; ++i)
    if (!(sw.values[i] < sw.values[i - 1] + 1e-8)) decreasing = false;
  const bool floor_ok = sw.plateau > 2.0 - 1e-3;
  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "strictly decreasing (eps 1e-8): %s; plateau %.10g, distance to N = %.3g, "
                "to 3N/2 = %.3g",
                decreasing ? "yes" : "no", sw.plateau, sw.plateau - 2.0, sw.plateau - 3.0);
  report(2, decreasing && floor_ok, detail, now_seconds() - t0, 30.0);
}

void criterion3_hardy() {
  const double t0 = now_seconds();
  bool pass = true;
  std::string detail;
  // randomized ratio floor
  const HardyWeight w2 = find_T(Dimension(2));
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double min_ratio = 1e300;
  for (int t = 0; t < 100; ++t) {
    const double a = 0.05 + 2.0 * unif(rng);
    const double b = a + 0.2 + 3.0 * unif(rng);
    const int n = 2000;
    RadialProfile prof;
    prof.dim = 2;
    prof.r.setLinSpaced(n, 0.0, std::min(10.0, 1.1 * b));
    prof.v.resize(n);
    for (int i = 0; i < n; ++i) {
      const double s = (prof.r[i] - a) / (b - a);
      prof.v[i] = (s > 0.0 && s < 1.0) ? std::pow(s * (1.0 - s), 3.0) : 0.0;
    }
    prof.v[n - 1] = 0.0;
    min_ratio = std::min(min_ratio, hardy_ratio(w2, prof));
  }
  if (!(min_ratio >= 0.25 - 1e-6)) pass = false;
  // sharpness ratios decreasing with the last below 0.27
  double last = 0.0;
  for (int N : {2, 3}) {
    double prev = 1e300;
    for (long k : {10L, 100L, 1000L, 10000L}) {
      last = sharpness_sequence(Dimension(N), k).ratio;
      if (!(last < prev)) pass = false;
      prev = last;
    }
    if (!(last <= 0.27 && last >= 0.25)) pass = false;
  }
  // ODE residual bound on 1000 log-spaced points
  double worst_ode = 0.0;
  for (int N : {2, 3, 4}) {
    const Dimension dn(N);
    for (int i = 0; i < 1000; ++i) {
      const double r = 1e-3 * std::pow(1e4, i / 999.0);
      const double v = rho(dn, r);
      worst_ode = std::max(worst_ode, ode_residual(dn, r) / (1e-5 * (1.0 + v * v)));
    }
  }
  if (!(worst_ode <= 1.0)) pass = false;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "min ratio %.8f >= 1/4 - 1e-6; sharpness decreasing, last %.4f <= 0.27; "
                "ODE residual / bound %.3g <= 1",
                min_ratio, last, worst_ode);
  report(3, pass, buf, now_seconds() - t0, 20.0);
}

void criterion4_faber_krahn() {
  const double t0 = now_seconds();
  const Dimension d2(2);
  bool pass = true;
  const double h = 1.0 / 128;
  double worst_margin = 1e300;
  for (const RasterDomain& dom : random_domains(20, h, 42)) {
    const double lam = eigenpairs(dom, 1, 1e-9).spectrum.kth(1);
    const double lam_star = lambda1_ball(d2, radius_of_volume(d2, dom.total_measure()));
    worst_margin = std::min(worst_margin, lam / lam_star - (1.0 - 5.0 * h));
    if (!(lam >= lam_star * (1.0 - 5.0 * h))) pass = false;
  }
  // slack refinement on the equality case: the rasterized unit disk
  const double lam_rad = lambda1_ball(d2, 1.0);
  const double d64 = std::abs(eigenpairs(make_disk({0, 0}, 1.0, 1.0 / 64), 1, 1e-9).spectrum.kth(1) - lam_rad);
  const double d128 = std::abs(eigenpairs(make_disk({0, 0}, 1.0, 1.0 / 128), 1, 1e-9).spectrum.kth(1) - lam_rad);
  const double ratio = d64 / d128;
  if (!(ratio > 1.5 && ratio < 2.5)) pass = false;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "20 domains hold lambda1 >= lambda1(ball)(1-5h), worst margin %.3g; "
                "slack ratio h=1/64 vs 1/128 is %.3f in [1.5, 2.5]",
                worst_margin, ratio);
  report(4, pass, buf, now_seconds() - t0, 300.0);
}

void criterion5_reverse_holder() {
  const double t0 = now_seconds();
  const Dimension d2(2);
  bool pass = true;
  // equality on the matched ball
  const double lam_ball = lambda1_ball(d2, 1.0);
  const ChitiData data = build_chiti(d2, lam_ball);
  const RadialEigenResult rr = lowest_eigenpairs({d2, 0, data.r_tilde, 2048}, 1, 1e-9);
  const double n1 = norm_mN(rr.profiles[0], 1.0);
  const double n2 = norm_mN(rr.profiles[0], 2.0);
  const double sup = rr.profiles[0].v.cwiseAbs().maxCoeff();
  const double e12 = std::abs(n2 / n1 - chiti_constant(data, 1.0, 2.0)) / chiti_constant(data, 1.0, 2.0);
  const double e2i =
      std::abs(sup / n2 - chiti_constant(data, 2.0, INFINITY)) / chiti_constant(data, 2.0, INFINITY);
  if (!(e12 < 1e-4 && e2i < 1e-4)) pass = false;
  // 10 random domains with matched lambda_1
  const double h = 1.0 / 128;
  double worst_excess = -1e300;
  for (const RasterDomain& dom : random_domains(10, h, 7)) {
    const FieldEigen fe = eigenpairs(dom, 1, 1e-9);
    const ChitiData d = build_chiti(d2, fe.spectrum.kth(1));
    double l1 = 0.0, l2 = 0.0, s = 0.0;
    int dof = 0;
    for (int j = 0; j < dom.ny; ++j)
      for (int i = 0; i < dom.nx; ++i)
        if (dom.active(i, j)) {
          const double m = dom.cell_measure(i, j), v = std::abs(fe.modes[0].values[dof++]);
          l1 += v * m;
          l2 += v * v * m;
          s = std::max(s, v);
        }
    l2 = std::sqrt(l2);
    const double ex12 = (l2 / l1) / chiti_constant(d, 1.0, 2.0) - 1.0;
    const double ex2i = (s / l2) / chiti_constant(d, 2.0, INFINITY) - 1.0;
    worst_excess = std::max({worst_excess, ex12, ex2i});
    if (!(ex12 <= 5.0 * h && ex2i <= 5.0 * h)) pass = false;
  }
  // Sturm-Liouville cross-check
  double worst_sl = 0.0;
  for (double lam : {8.0, 12.0, 20.0}) {
    const ChitiData d = build_chiti(d2, lam);
    worst_sl = std::max(worst_sl, std::abs(sl_sigma1(d2, d.L_tilde) - lam) / lam);
  }
  if (!(worst_sl < 1e-4)) pass = false;
  char buf[300];
  std::snprintf(buf, sizeof(buf),
                "ball equality to %.2g/%.2g (tol 1e-4); 10 domains within 5h slack "
                "(worst excess %.2g); sigma_1 cross-check %.2g < 1e-4",
                e12, e2i, worst_excess, worst_sl);
  report(5, pass, buf, now_seconds() - t0, 300.0);
}

void criterion6_torsion_machinery() {
  const double t0 = now_seconds();
  bool pass = true;
  double min_w = 1e300;
  // torsion positivity across the tested domains
  std::vector<RasterDomain> doms = random_domains(4, 1.0 / 64, 11);
  doms.push_back(make_disk({0, 0}, 1.0, 1.0 / 128));
  BallFamilyConfig two{{-1.0, 1.0}, {0.55, 0.55}};
  doms.push_back(rasterize_balls(two, 1.0 / 64));
  for (const auto& dom : doms) {
    const TorsionField tf = torsion(dom);
    min_w = std::min(min_w, tf.w.minCoeff());
    if (!(tf.w.minCoeff() > 0.0)) pass = false;
  }
  // domination on the disk and the two-ball union, j <= 3
  const double v1 = domination_check(doms[doms.size() - 2], 3).max_violation;
  const double v2 = domination_check(doms[doms.size() - 1], 3).max_violation;
  if (!(v1 <= 1e-8 && v2 <= 1e-8)) pass = false;
  // 50-trial maximum principle
  const MaxPrincipleReport mp = maximum_principle_check(make_disk({0, 0}, 0.9, 1.0 / 64), 50, 42);
  if (mp.violations != 0) pass = false;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "torsion positive on 6 domains (min w %.3g); domination violations %.2g/%.2g "
                "<= 1e-8; max principle 50 trials, %d violations",
                min_w, v1, v2, mp.violations);
  report(6, pass, buf, now_seconds() - t0, 180.0);
}

void criterion7_cross_oracle() {
  const double t0 = now_seconds();
  const Dimension d2(2);
  bool pass = true;
  // 2D vs radial on the centered disk. The masked five-point boundary is
  // first order, so the solver-level Richardson convention (already used by
  // lambda1_ball) is applied to the raster pair h = 1/128, 1/256; the direct
  // h = 1/256 value is reported alongside.
  const double lam_rad = lambda1_ball(d2, 1.0);
  const double l128 = eigenpairs(make_disk({0, 0}, 1.0, 1.0 / 128), 1, 1e-9).spectrum.kth(1);
  const double l256 = eigenpairs(make_disk({0, 0}, 1.0, 1.0 / 256), 1, 1e-9).spectrum.kth(1);
  const double extrap = 2.0 * l256 - l128;
  const double diff_direct = std::abs(l256 - lam_rad);
  const double diff = std::abs(extrap - lam_rad);
  if (!(diff < 5e-3)) pass = false;
  // u-form vs v-form relation nu = lambda - N/2
  double worst_uv = 0.0;
  for (int N : {2, 3}) {
    const Dimension dn(N);
    for (int ell : {0, 1}) {
      auto lam = [&](int n, RadialForm f) {
        return smallest_eigenpairs(assemble({dn, ell, 1.0, n}, f).pencil, 1, 1e-10, true)
            .values[0];
      };
      const double lu =
          (4.0 * lam(4096, RadialForm::Weighted) - lam(2048, RadialForm::Weighted)) / 3.0;
      const double lv =
          (4.0 * lam(4096, RadialForm::Oscillator) - lam(2048, RadialForm::Oscillator)) / 3.0;
      worst_uv = std::max(worst_uv, std::abs(lu - (lv + 0.5 * N)));
    }
  }
  if (!(worst_uv <= 1e-8)) pass = false;
  // disjoint-union merged-spectrum identity
  BallFamilyConfig two{{-1.0, 1.0}, {0.55, 0.55}};
  const RasterDomain uni = rasterize_balls(two, 1.0 / 64);
  const FieldEigen fe = eigenpairs(uni, 4, 1e-10);
  std::vector<double> merged;
  for (const auto& comp : split_components(uni)) {
    const FieldEigen fc = eigenpairs(comp, 2, 1e-10);
    merged.push_back(fc.spectrum.kth(1));
    merged.push_back(fc.spectrum.kth(2));
  }
  std::sort(merged.begin(), merged.end());
  double worst_merge = 0.0;
  for (int k = 1; k <= 4; ++k)
    worst_merge = std::max(worst_merge, std::abs(fe.spectrum.kth(k) - merged[k - 1]));
  if (!(worst_merge <= 1e-8)) pass = false;
  char buf[300];
  std::snprintf(buf, sizeof(buf),
                "disk: extrapolated raster vs radial %.2g < 5e-3 (direct at h=1/256: %.2g); "
                "u/v relation %.2g <= 1e-8; union identity %.2g <= 1e-8",
                diff, diff_direct, worst_uv, worst_merge);
  report(7, pass, buf, now_seconds() - t0);
}

void criterion8_shape_experiment() {
  const double t0 = now_seconds();
  const Dimension d2(2);
  bool pass = true;
  const double c = ball_volume(d2, 1.0);
  const double h = 1.0 / 64;
  const nlohmann::json rep_a = experiment_k2(c, h);
  const nlohmann::json rep_b = experiment_k2(c, h);
  const bool deterministic = rep_a.dump() == rep_b.dump();
  if (!deterministic) pass = false;
  // block-decoupling identity on configuration (b)
  double identity_gap = 1e300;
  for (const auto& cfg : rep_a["configs"]) {
    if (cfg["name"] == "two_equal_balls")
      identity_gap = std::abs(cfg["lambda_k"].get<double>() -
                              cfg["params"]["component_merged_lambda2"].get<double>());
  }
  if (!(identity_gap <= 1e-6)) pass = false;
  // the k = 1 search lands on a single centered ball
  ObjectiveSpec spec{1, c, h};
  BallFamilyConfig init{{-0.8, 0.8}, {0.6, 0.5}};
  const NelderMeadResult nm = nelder_mead(spec, init, 1e-5, 500);
  int big = nm.best.radii[0] > nm.best.radii[1] ? 0 : 1;
  const double center_err = std::abs(nm.best.centers[big]);
  const double small_radius = nm.best.radii[1 - big];
  const double radius_err = std::abs(nm.best.radii[big] - radius_of_volume(d2, c));
  if (!(center_err <= 1e-2 && small_radius <= 1e-2 && radius_err <= 1e-2)) pass = false;
  // the search never beats the centered ball beyond discretization slack
  if (!(nm.value >= lambda1_ball(d2, radius_of_volume(d2, c)) * (1.0 - 5.0 * h))) pass = false;
  char buf[300];
  std::snprintf(buf, sizeof(buf),
                "report deterministic: %s; two-equal identity gap %.2g <= 1e-6; k=1 search: "
                "|center| %.3g, leftover radius %.3g, radius error %.3g, all <= 1e-2",
                deterministic ? "yes" : "no", identity_gap, center_err, small_radius, radius_err);
  report(8, pass, buf, now_seconds() - t0, 900.0);
}

} // namespace

int main() {
  criterion1_sandwich();
  criterion2_sweep();
  criterion3_hardy();
  criterion4_faber_krahn();
  criterion5_reverse_holder();
  criterion6_torsion_machinery();
  criterion7_cross_oracle();
  criterion8_shape_experiment();
  std::printf("%d criterion failure(s)\n", g_failures);
  return g_failures;
}
