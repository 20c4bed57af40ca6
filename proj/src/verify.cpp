#include "driftspec/verify.hpp"

#include "driftspec/chiti.hpp"
#include "driftspec/field2d.hpp"
#include "driftspec/hardy.hpp"
#include "driftspec/measure.hpp"
#include "driftspec/radial.hpp"
#include "driftspec/rearrange.hpp"
#include "driftspec/shapeopt.hpp"

#include <cmath>
#include <cstdio>
#include <random>

namespace driftspec {

namespace {

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

GridFunction sample_radial_disk(double R, double h) {
  GridFunction u;
  u.domain = make_disk({0.0, 0.0}, R, h);
  u.values.resize(u.domain.active_count());
  int dof = 0;
  for (int j = 0; j < u.domain.ny; ++j)
    for (int i = 0; i < u.domain.nx; ++i)
      if (u.domain.active(i, j))
        u.values[dof++] = std::max(0.0, 1.0 - u.domain.cell_center(i, j).squaredNorm() / (R * R));
  return u;
}

RadialProfile random_bump(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double a = 0.05 + 2.0 * unif(rng);
  const double b = a + 0.2 + 3.0 * unif(rng);
  const int n = 2000;
  RadialProfile prof;
  prof.dim = 2;
  prof.r.setLinSpaced(n, 0.0, std::min(10.0, b * 1.1));
  prof.v.resize(n);
  for (int i = 0; i < n; ++i) {
    const double r = prof.r[i];
    const double t = (r - a) / (b - a);
    prof.v[i] = (t > 0.0 && t < 1.0) ? std::pow(t * (1.0 - t), 3.0) : 0.0;
  }
  prof.v[n - 1] = 0.0;
  return prof;
}

} // namespace

std::vector<CheckResult> run_verification(bool quick, std::uint64_t seed) {
  std::vector<CheckResult> out;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    out.push_back({name, pass, detail});
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Dimension d2(2), d3(3), d4(4);

  // -- measure_geom ---------------------------------------------------------
  {
    double worst = 0.0;
    for (double r : {0.3, 1.0, 2.2, 4.0}) {
      const double closed = 2.0 * M_PI * std::expm1(0.5 * r * r);
      worst = std::max(worst, std::abs(ball_volume(d2, r) - closed) / closed);
      const double quad = detail::ball_volume_quadrature(d2, r);
      worst = std::max(worst, std::abs(quad - closed) / closed);
      const double hclosed = 2.0 * M_PI * std::exp(0.5 * r * r) * r;
      worst = std::max(worst, std::abs(shell_density(d2, r) - hclosed) / hclosed);
    }
    add("measure.closed_forms_N2", worst < 1e-12, fmt("worst rel err %.3g", worst));
  }
  {
    const int n = quick ? 25 : 100;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = 6.0 * (i + 0.5) / n;
      for (const Dimension& N : {d2, d3}) {
        const double rt = radius_of_volume(N, ball_volume(N, r));
        worst = std::max(worst, std::abs(rt - r) / r);
      }
    }
    add("measure.inverse_roundtrip", worst < 1e-10, fmt("worst rel err %.3g", worst));
  }
  {
    bool incr = true;
    double prev = 0.0;
    for (int i = 1; i <= 40; ++i) {
      const double v = isoperimetric_profile(d2, 0.2 * i);
      if (v <= prev) incr = false;
      prev = v;
    }
    add("measure.isoperimetric_increasing", incr, "I(s) increasing on the sampled grid");
  }
  {
    const double rho = 0.5;
    const Eigen::Vector2d c(1.0, 0.0);
    const double v = offcenter_ball_volume(c, rho);
    const double wmin = std::exp(0.5 * (c.norm() - rho) * (c.norm() - rho));
    const double wmax = std::exp(0.5 * (c.norm() + rho) * (c.norm() + rho));
    const double area = M_PI * rho * rho;
    const bool ok = v >= area * wmin && v <= area * wmax;
    add("measure.offcenter_sandwich", ok, fmt("v=%.6g within weight bounds", v));
  }

  // -- rearrange ------------------------------------------------------------
  {
    GridFunction u;
    u.domain = make_rectangle(0.1, 0.9, -0.3, 0.4, 1.0 / 32);
    u.values.resize(u.domain.active_count());
    for (int i = 0; i < u.values.size(); ++i) u.values[i] = unif(rng) * 2.0 - 0.6;
    double worst = 0.0;
    const MonotoneProfile star = decreasing_rearrangement(u);
    for (double p : {1.0, 2.0, 4.0}) {
      double direct = 0.0;
      int dof = 0;
      for (int j = 0; j < u.domain.ny; ++j)
        for (int i = 0; i < u.domain.nx; ++i)
          if (u.domain.active(i, j))
            direct += std::pow(std::abs(u.values[dof++]), p) * u.domain.cell_measure(i, j);
      const double via_star = star.integral_pow(p, star.total_measure);
      worst = std::max(worst, std::abs(direct - via_star) / direct);
    }
    add("rearrange.norm_identities", worst < 1e-12, fmt("worst rel err %.3g", worst));

    const RadialProfile sym = symmetrize(u);
    double worst_sym = 0.0;
    for (double p : {1.0, 2.0, 4.0}) {
      const double a = std::pow(norm_mN(sym, p), p);
      const double b = star.integral_pow(p, star.total_measure);
      worst_sym = std::max(worst_sym, std::abs(a - b) / b);
    }
    add("rearrange.symmetrize_norms", worst_sym < 1e-10, fmt("worst rel err %.3g", worst_sym));
  }
  {
    const int trials = quick ? 10 : 100;
    GridFunction u, v;
    u.domain = make_rectangle(0.0, 0.5, 0.0, 0.5, 1.0 / 16);
    v.domain = u.domain;
    int viol = 0;
    for (int t = 0; t < trials; ++t) {
      u.values.resize(u.domain.active_count());
      v.values.resize(u.domain.active_count());
      for (int i = 0; i < u.values.size(); ++i) {
        u.values[i] = 2.0 * unif(rng) - 1.0;
        v.values[i] = 2.0 * unif(rng) - 1.0;
      }
      const auto [lhs, rhs] = hardy_littlewood_check(u, v);
      if (lhs > rhs * (1.0 + 1e-12)) ++viol;
    }
    add("rearrange.hardy_littlewood", viol == 0, fmt("violations %g / trials %g",
                                                     static_cast<double>(viol),
                                                     static_cast<double>(trials)));
  }
  {
    const PolyaReport a = polya_szego_check(sample_radial_disk(1.0, 1.0 / 32));
    const PolyaReport b = polya_szego_check(sample_radial_disk(1.0, 1.0 / 64));
    const double ratio = a.slack_rel / b.slack_rel;
    add("rearrange.polya_refinement", ratio > 1.5 && ratio < 2.5,
        fmt("slack ratio h->h/2 = %.3f", ratio));
  }

  // -- radial_solver --------------------------------------------------------
  {
    double worst = 0.0;
    for (const Dimension& N : {d2, d3}) {
      for (int ell : {0, 1}) {
        auto lam = [&](int n, RadialForm f) {
          return smallest_eigenpairs(assemble({N, ell, 1.0, n}, f).pencil, 1, 1e-10, true)
              .values[0];
        };
        const double lu = (4.0 * lam(4096, RadialForm::Weighted) - lam(2048, RadialForm::Weighted)) / 3.0;
        const double lv =
            (4.0 * lam(4096, RadialForm::Oscillator) - lam(2048, RadialForm::Oscillator)) / 3.0;
        worst = std::max(worst, std::abs(lu - (lv + 0.5 * N.value())));
      }
    }
    add("radial.transform_consistency", worst < 1e-8, fmt("max |lambda - (nu+N/2)| = %.3g", worst));
  }
  {
    const RadialEigenResult r = lowest_eigenpairs({d2, 0, 1.0, quick ? 1024 : 2048}, 4, 1e-9);
    const RadialAssembly asmb = assemble({d2, 0, 1.0, quick ? 1024 : 2048});
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b <= a; ++b) {
        const Eigen::VectorXd va = r.profiles[a].v.segment(1, asmb.nodes.size());
        const Eigen::VectorXd vb = r.profiles[b].v.segment(1, asmb.nodes.size());
        const double ip = (va.array() * vb.array() * asmb.pencil.mass.array()).sum();
        worst = std::max(worst, std::abs(ip - (a == b ? 1.0 : 0.0)));
      }
    add("radial.m_orthonormality", worst < 1e-10, fmt("max deviation %.3g", worst));
  }
  {
    bool mono = true;
    for (const Dimension& N : {d2, d3}) {
      Eigen::VectorXd prev;
      for (double R : {1.0, 1.5, 2.0, 3.0}) {
        const Spectrum s = ball_spectrum(N, R, 4, 1e-9, quick ? 1024 : 2048);
        Eigen::VectorXd cur(4);
        for (int j = 1; j <= 4; ++j) cur[j - 1] = s.kth(j);
        if (prev.size() && (cur.array() > prev.array() + 1e-9).any()) mono = false;
        prev = cur;
      }
    }
    add("radial.domain_monotonicity", mono, "lambda_j(B_R) nonincreasing in R for j <= 4");
  }
  {
    double worst_floor = 1e300;
    bool delta_ok = true;
    for (const Dimension& N : {d2, d3}) {
      const double j0 = bessel_j_first_zero(0.5 * N.value() - 1.0);
      for (double R : {0.5, 1.0, 2.0}) {
        const Spectrum s = ball_spectrum(N, R, 3, 1e-9, quick ? 1024 : 2048);
        for (const auto& e : s.entries) {
          worst_floor = std::min(worst_floor, e.lambda - N.value());
          if (e.lambda < 0.5 * N.value() + j0 * j0 / (R * R) - 1e-9) delta_ok = false;
        }
      }
    }
    add("radial.poincare_floor", worst_floor > 0.0, fmt("min lambda - N = %.3g", worst_floor));
    add("radial.delta_lower_bound", delta_ok, "lambda_j >= N/2 + j_{N/2-1,1}^2/R^2");
  }

  // -- hardy ----------------------------------------------------------------
  {
    const int pts = quick ? 200 : 1000;
    double worst = 0.0;
    for (const Dimension& N : {d2, d3, d4}) {
      for (int i = 0; i < pts; ++i) {
        const double r = 1e-3 * std::pow(1e4, static_cast<double>(i) / (pts - 1));
        const double v = rho(N, r);
        worst = std::max(worst, ode_residual(N, r) / (1e-5 * (1.0 + v * v)));
      }
    }
    add("hardy.ode_residual", worst <= 1.0, fmt("worst residual / bound = %.3g", worst));
  }
  {
    const HardyWeight w = find_T(d2);
    const int trials = quick ? 20 : 100;
    double worst = 1e300;
    for (int t = 0; t < trials; ++t) worst = std::min(worst, hardy_ratio(w, random_bump(rng)));
    add("hardy.ratio_floor", worst >= 0.25 - 1e-6, fmt("min ratio %.8f", worst));
    bool trunc_ok = true;
    for (int t = 0; t < 100; ++t) {
      const double r = 1e-3 * std::pow(1e4, unif(rng));
      const double a = rho_truncated(w, r), b = rho(d2, r);
      if (!(a > 0.0 && a <= b * (1.0 + 1e-12))) trunc_ok = false;
    }
    add("hardy.truncation_bounds", trunc_ok, "0 < rho_T <= rho");
  }
  {
    double prev = 1e300;
    bool dec = true;
    double last = 0.0;
    std::vector<long> ks{10L, 100L, 1000L};
    if (!quick) ks.push_back(10000L);
    for (long k : ks) {
      last = sharpness_sequence(d3, k).ratio;
      if (last >= prev) dec = false;
      prev = last;
    }
    add("hardy.sharpness_monotone", dec && last >= 0.25 && last <= 0.27,
        fmt("last ratio %.6f", last));
  }

  // -- field_solver_2d ------------------------------------------------------
  const double h_field = quick ? 1.0 / 64 : 1.0 / 128;
  {
    RasterDomain disk = make_disk({0.0, 0.0}, 1.0, h_field);
    const FieldEigen fe = eigenpairs(disk, 3, 1e-9);
    double worst = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b <= a; ++b) {
        double ip = 0.0;
        int dof = 0;
        for (int j = 0; j < disk.ny; ++j)
          for (int i = 0; i < disk.nx; ++i)
            if (disk.active(i, j)) {
              ip += fe.modes[a].values[dof] * fe.modes[b].values[dof] * disk.cell_measure(i, j);
              ++dof;
            }
        worst = std::max(worst, std::abs(ip - (a == b ? 1.0 : 0.0)));
      }
    add("field.m_orthonormality", worst < 1e-8, fmt("max deviation %.3g", worst));
    add("field.lambda1_above_N", fe.spectrum.kth(1) > 2.0,
        fmt("lambda1 = %.6f", fe.spectrum.kth(1)));
    // the two assemblies are compared at h = 1/256 in the full suite
    RasterDomain uv_disk = quick ? disk : make_disk({0.0, 0.0}, 1.0, 1.0 / 256);
    const double lu = lambda1_uform(uv_disk, 1e-9);
    const double lv = quick ? fe.spectrum.kth(1) : eigenpairs(uv_disk, 1, 1e-9).spectrum.kth(1);
    add("field.uform_vform", std::abs(lu - lv) < 5e-3,
        fmt("|uform - vform| = %.3g", std::abs(lu - lv)));
  }
  {
    const int domains = quick ? 3 : 10;
    const double j0 = bessel_j_first_zero(0.0);
    bool fk_ok = true, delta_ok = true;
    for (int t = 0; t < domains; ++t) {
      RasterDomain dom;
      if (t % 2 == 0) {
        const double cx = unif(rng) - 0.5, cy = unif(rng) - 0.5, R = 0.4 + 0.6 * unif(rng);
        dom = make_disk({cx, cy}, R, h_field);
      } else {
        const double x0 = unif(rng) - 1.0, y0 = unif(rng) - 1.0;
        dom = make_rectangle(x0, x0 + 0.4 + unif(rng), y0, y0 + 0.4 + unif(rng), h_field);
      }
      const double lam = eigenpairs(dom, 1, 1e-9).spectrum.kth(1);
      const double lam_star = lambda1_ball(d2, radius_of_volume(d2, dom.total_measure()));
      if (lam < lam_star * (1.0 - 5.0 * h_field)) fk_ok = false;
      const double R_leb = std::sqrt(dom.lebesgue_area() / M_PI);
      // the continuum bound carries the raster's O(h) slack, matching the
      // Faber-Krahn convention
      if (lam < (1.0 + j0 * j0 / (R_leb * R_leb)) * (1.0 - 5.0 * h_field)) delta_ok = false;
    }
    add("field.faber_krahn", fk_ok, "lambda1(Omega) >= lambda1(Omega*)(1 - 5h)");
    add("field.delta_lower_bound", delta_ok, "lambda1 >= (1 + j01^2/R_leb^2)(1 - 5h)");
  }
  {
    RasterDomain disk = make_disk({0.0, 0.0}, 0.9, h_field);
    const TorsionField tf = torsion(disk);
    add("field.torsion_positive", tf.w.minCoeff() > 0.0, fmt("min w = %.3g", tf.w.minCoeff()));
    const DominationReport dr = domination_check(disk, quick ? 2 : 3);
    add("field.domination", dr.max_violation <= 1e-8, fmt("max violation %.3g", dr.max_violation));
    const MaxPrincipleReport mp = maximum_principle_check(disk, quick ? 10 : 50, seed);
    add("field.maximum_principle", mp.violations == 0,
        fmt("violations %g, worst %.3g", static_cast<double>(mp.violations), mp.worst_min_rel));
  }

  // -- reverse_holder -------------------------------------------------------
  {
    const ChitiData data = build_chiti(d2, 12.0);
    ChitiData scaled = data;
    scaled.z_star.values *= 4.0;
    const bool exact = chiti_constant(scaled, 1.0, 2.0) == chiti_constant(data, 1.0, 2.0);
    add("chiti.scale_invariance", exact, "C unchanged under power-of-two rescaling");
    double worst = 0.0;
    for (double lam : quick ? std::vector<double>{12.0} : std::vector<double>{8.0, 12.0, 20.0}) {
      const ChitiData d = lam == 12.0 ? data : build_chiti(d2, lam);
      worst = std::max(worst, std::abs(sl_sigma1(d2, d.L_tilde) - lam) / lam);
    }
    add("chiti.sl_cross_check", worst < 1e-4, fmt("worst rel err %.3g", worst));
  }
  {
    const int domains = quick ? 2 : 10;
    bool ok = true;
    for (int t = 0; t < domains; ++t) {
      const double x0 = 0.3 * unif(rng) - 0.8, y0 = 0.3 * unif(rng) - 0.8;
      RasterDomain dom = make_rectangle(x0, x0 + 0.7 + 0.8 * unif(rng), y0,
                                        y0 + 0.7 + 0.8 * unif(rng), h_field);
      const FieldEigen fe = eigenpairs(dom, 1, 1e-9);
      const double lam = fe.spectrum.kth(1);
      const ChitiData d = build_chiti(d2, lam);
      double l1 = 0.0, l2 = 0.0, sup = 0.0;
      int dof = 0;
      for (int j = 0; j < dom.ny; ++j)
        for (int i = 0; i < dom.nx; ++i)
          if (dom.active(i, j)) {
            const double m = dom.cell_measure(i, j), v = std::abs(fe.modes[0].values[dof++]);
            l1 += v * m;
            l2 += v * v * m;
            sup = std::max(sup, v);
          }
      l2 = std::sqrt(l2);
      if (l2 / l1 > chiti_constant(d, 1.0, 2.0) * (1.0 + 5.0 * h_field)) ok = false;
      if (sup / l2 > chiti_constant(d, 2.0, INFINITY) * (1.0 + 5.0 * h_field)) ok = false;
    }
    add("chiti.reverse_holder_domains", ok, "norm ratios within C (1 + 5h)");
  }

  {
    // report-only: reverse-Holder ratios for the next two eigenfunctions on a
    // sample domain; the bound is proved for every j but only j = 1 is
    // asserted rigorously
    RasterDomain dom = make_rectangle(-0.8, 0.8, -0.7, 0.7, h_field);
    const FieldEigen fe = eigenpairs(dom, 3, 1e-9);
    std::string msg;
    for (int jj = 1; jj < 3; ++jj) {
      const double lam = fe.spectrum.entries[jj].lambda;
      const ChitiData d = build_chiti(d2, lam);
      double l2 = 0.0, sup = 0.0;
      int dof = 0;
      for (int j = 0; j < dom.ny; ++j)
        for (int i = 0; i < dom.nx; ++i)
          if (dom.active(i, j)) {
            const double v = std::abs(fe.modes[jj].values[dof++]);
            l2 += v * v * dom.cell_measure(i, j);
            sup = std::max(sup, v);
          }
      l2 = std::sqrt(l2);
      msg += fmt("j=%g: ratio/C = %.4f  ", static_cast<double>(jj + 1),
                 (sup / l2) / chiti_constant(d, 2.0, INFINITY));
    }
    add("chiti.higher_modes_report", true, msg);
  }

  // -- shapeopt -------------------------------------------------------------
  {
    const double c = ball_volume(d2, 1.0);
    BallFamilyConfig two{{-1.0, 1.0}, {0.6, 0.6}};
    const BallFamilyConfig p = project_to_constraint(two, c);
    double tot = 0.0;
    for (int i = 0; i < p.count(); ++i)
      tot += offcenter_ball_volume({p.centers[i], 0.0}, p.radii[i]);
    add("shapeopt.projection_active", std::abs(tot - c) <= 1e-8 * c,
        fmt("|sum vol - c|/c = %.3g", std::abs(tot - c) / c));

    RasterDomain uni = rasterize_balls(p, quick ? 1.0 / 48 : 1.0 / 64);
    const FieldEigen feu = eigenpairs(uni, 2, 1e-9);
    const auto comps = split_components(uni);
    double lam1c = 1e300;
    for (const auto& cd : comps) lam1c = std::min(lam1c, eigenpairs(cd, 1, 1e-9).spectrum.kth(1));
    add("shapeopt.merged_spectrum", std::abs(feu.spectrum.kth(2) - lam1c) <= 1e-8,
        fmt("identity gap %.3g", std::abs(feu.spectrum.kth(2) - lam1c)));

    ObjectiveSpec spec{1, c, quick ? 1.0 / 48 : 1.0 / 64};
    const double f_ctr = objective(project_to_constraint({{0.0}, {1.0}}, c), spec);
    const double f_off = objective(project_to_constraint({{0.5}, {1.0}}, c), spec);
    add("shapeopt.centered_optimal", f_off > f_ctr * (1.0 - 5.0 * spec.h),
        fmt("centered %.6g vs offcenter %.6g", f_ctr, f_off));
  }

  return out;
}

} // namespace driftspec
