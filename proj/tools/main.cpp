#include "driftspec/chiti.hpp"
#include "driftspec/errors.hpp"
#include "driftspec/field2d.hpp"
#include "driftspec/hardy.hpp"
#include "driftspec/measure.hpp"
#include "driftspec/radial.hpp"
#include "driftspec/shapeopt.hpp"
#include "driftspec/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>

using json = nlohmann::json;
using namespace driftspec;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerification = 4;

struct OutputOptions {
  std::string format = "json";
  bool timing = false;
};

json run_result(const std::string& command, json params, json outputs, json meta,
                const OutputOptions& opt, double seconds) {
  json r{{"schema", 1},
         {"command", command},
         {"params", std::move(params)},
         {"outputs", std::move(outputs)},
         {"meta", std::move(meta)}};
  if (opt.timing) r["meta"]["runtime_seconds"] = seconds;
  return r;
}

void print_spectrum_csv(const Spectrum& s) {
  std::printf("index,lambda,ell,multiplicity,residual\n");
  int idx = 1;
  for (const auto& e : s.entries) {
    std::printf("%d,%.15g,%d,%d,%.3g\n", idx, e.lambda, e.ell, e.multiplicity, e.residual);
    idx += e.multiplicity;
  }
}

json spectrum_json(const Spectrum& s) {
  json arr = json::array();
  int idx = 1;
  for (const auto& e : s.entries) {
    arr.push_back({{"index", idx},
                   {"lambda", e.lambda},
                   {"ell", e.ell},
                   {"multiplicity", e.multiplicity},
                   {"residual", e.residual}});
    idx += e.multiplicity;
  }
  return arr;
}

RadialProfile cubic_bump(int dim, double a, double b) {
  const int n = 2000;
  RadialProfile prof;
  prof.dim = dim;
  prof.r.setLinSpaced(n, 0.0, std::min(10.0, 1.1 * b));
  prof.v.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = (prof.r[i] - a) / (b - a);
    prof.v[i] = (t > 0.0 && t < 1.0) ? std::pow(t * (1.0 - t), 3.0) : 0.0;
  }
  prof.v[n - 1] = 0.0;
  return prof;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral toolkit for the Dirichlet drift operator -Delta - x.grad"};
  app.require_subcommand(1);
  OutputOptions opt;
  app.add_option("--format", opt.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--timing", opt.timing, "include runtime seconds in meta (breaks byte determinism)");

  auto* cmd_ball = app.add_subcommand("ball-spectrum", "eigenvalues of the centered ball B_R");
  int bs_dim = 2, bs_count = 1;
  double bs_radius = 1.0, bs_tol = 1e-9;
  cmd_ball->add_option("--dim", bs_dim, "dimension N >= 2")->required();
  cmd_ball->add_option("--radius", bs_radius, "ball radius")->required();
  cmd_ball->add_option("--count", bs_count, "number of eigenvalues")->required();
  cmd_ball->add_option("--tol", bs_tol, "solver tolerance");

  auto* cmd_sweep = app.add_subcommand("sweep", "lambda_1(B_r) over a radius grid");
  int sw_dim = 2, sw_steps = 40;
  double sw_rmin = 0.25, sw_rmax = 8.0;
  cmd_sweep->add_option("--dim", sw_dim)->required();
  cmd_sweep->add_option("--rmin", sw_rmin)->required();
  cmd_sweep->add_option("--rmax", sw_rmax)->required();
  cmd_sweep->add_option("--steps", sw_steps)->required();

  auto* cmd_hardy = app.add_subcommand("hardy", "Hardy weight, minimum T, sharpness sequence");
  int hd_dim = 2, hd_profiles = 100;
  std::uint64_t hd_seed = 42;
  cmd_hardy->add_option("--dim", hd_dim)->required();
  cmd_hardy->add_option("--profiles", hd_profiles, "random profiles for the ratio floor");
  cmd_hardy->add_option("--seed", hd_seed);

  auto* cmd_chiti = app.add_subcommand("chiti", "reverse-Holder constant C(N, r, q, lambda)");
  int ch_dim = 2;
  double ch_lambda = 12.0, ch_r = 2.0;
  std::string ch_q = "inf";
  cmd_chiti->add_option("--dim", ch_dim)->required();
  cmd_chiti->add_option("--lambda", ch_lambda)->required();
  cmd_chiti->add_option("--r", ch_r)->required();
  cmd_chiti->add_option("--q", ch_q, "exponent q > r, or 'inf'")->required();

  auto* cmd_dom = app.add_subcommand("domain-spectrum", "eigenvalues of a rasterized domain");
  std::string dm_mask;
  int dm_count = 1;
  double dm_tol = 1e-9;
  cmd_dom->add_option("--mask", dm_mask, "mask file")->required();
  cmd_dom->add_option("--count", dm_count)->required();
  cmd_dom->add_option("--tol", dm_tol);

  auto* cmd_tor = app.add_subcommand("torsion", "torsion function of a rasterized domain");
  std::string to_mask, to_dump;
  cmd_tor->add_option("--mask", to_mask, "mask file")->required();
  cmd_tor->add_option("--dump", to_dump, "write per-cell values to this CSV file");

  auto* cmd_shape = app.add_subcommand("shape-search", "minimize lambda_k over ball families");
  int sh_k = 1, sh_balls = 2, sh_budget = 300;
  double sh_c = 0.0, sh_h = 1.0 / 64, sh_tol = 1e-4;
  std::string sh_experiment;
  cmd_shape->add_option("--k", sh_k);
  cmd_shape->add_option("--c", sh_c, "volume budget (default m_2(B_1))");
  cmd_shape->add_option("--grid-h", sh_h);
  cmd_shape->add_option("--balls", sh_balls);
  cmd_shape->add_option("--budget", sh_budget);
  cmd_shape->add_option("--tol", sh_tol);
  cmd_shape->add_option("--experiment", sh_experiment, "named experiment: k2");

  auto* cmd_verify = app.add_subcommand("verify", "run the module invariant suites");
  bool vf_quick = false;
  std::uint64_t vf_seed = 42;
  cmd_verify->add_flag("--quick", vf_quick);
  cmd_verify->add_option("--seed", vf_seed);

  for (auto* sc : app.get_subcommands({})) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  try {
    if (cmd_ball->parsed()) {
      if (bs_count < 1) {
        std::cerr << "ball-spectrum: --count must be >= 1\n";
        return kExitUsage;
      }
      const Spectrum s = ball_spectrum(Dimension(bs_dim), bs_radius, bs_count, bs_tol);
      if (opt.format == "csv") {
        print_spectrum_csv(s);
      } else {
        std::cout << run_result("ball-spectrum",
                                {{"dim", bs_dim}, {"radius", bs_radius}, {"count", bs_count}},
                                {{"spectrum", spectrum_json(s)}},
                                {{"tol", bs_tol}, {"grid_n", 2048}}, opt, elapsed())
                         .dump(2)
                  << "\n";
      }
      return 0;
    }

    if (cmd_sweep->parsed()) {
      if (!(0.0 < sw_rmin && sw_rmin < sw_rmax)) {
        std::cerr << "sweep: need 0 < rmin < rmax\n";
        return kExitUsage;
      }
      const SweepResult sw = sweep_lambda1(Dimension(sw_dim), sw_rmin, sw_rmax, sw_steps);
      // strict decrease asserted with a solver-tolerance epsilon: the analytic
      // gaps at the plateau fall below what double precision can certify
      bool decreasing = true;
      for (int i = 1; i < sw_steps; ++i)
        if (!(sw.values[i] < sw.values[i - 1] + 1e-8)) decreasing = false;
      const double dist_N = sw.plateau - sw_dim;
      const double dist_3N2 = sw.plateau - 1.5 * sw_dim;
      if (opt.format == "csv") {
        std::printf("r,lambda1\n");
        for (int i = 0; i < sw_steps; ++i) std::printf("%.15g,%.15g\n", sw.radii[i], sw.values[i]);
        std::printf("# plateau,%.15g\n# distance_to_N,%.15g\n# distance_to_3N_over_2,%.15g\n",
                    sw.plateau, dist_N, dist_3N2);
        std::printf("# strictly_decreasing,%d\n", decreasing ? 1 : 0);
      } else {
        json rows = json::array();
        for (int i = 0; i < sw_steps; ++i) rows.push_back({sw.radii[i], sw.values[i]});
        std::cout << run_result("sweep",
                                {{"dim", sw_dim},
                                 {"rmin", sw_rmin},
                                 {"rmax", sw_rmax},
                                 {"steps", sw_steps}},
                                {{"samples", rows},
                                 {"plateau", sw.plateau},
                                 {"distance_to_N", dist_N},
                                 {"distance_to_3N_over_2", dist_3N2},
                                 {"strictly_decreasing", decreasing}},
                                {{"grid_n", 2048}, {"decrease_epsilon", 1e-8}}, opt, elapsed())
                         .dump(2)
                  << "\n";
      }
      return decreasing ? 0 : kExitNumerical;
    }

    if (cmd_hardy->parsed()) {
      const Dimension N(hd_dim);
      const HardyWeight w = find_T(N);
      json sharp = json::array();
      for (long k : {10L, 100L, 1000L, 10000L})
        sharp.push_back({{"k", k}, {"ratio", sharpness_sequence(N, k).ratio}});
      std::mt19937_64 rng(hd_seed);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      double min_ratio = 1e300;
      for (int t = 0; t < hd_profiles; ++t) {
        const double a = 0.05 + 2.0 * unif(rng);
        const double b = a + 0.2 + 3.0 * unif(rng);
        min_ratio = std::min(min_ratio, hardy_ratio(w, cubic_bump(hd_dim, a, b)));
      }
      std::cout << run_result(
                       "hardy", {{"dim", hd_dim}, {"profiles", hd_profiles}, {"seed", hd_seed}},
                       {{"T", w.T},
                        {"rho_T", w.rhoT},
                        {"sharpness", sharp},
                        {"min_random_ratio", min_ratio},
                        {"ratio_floor_holds", min_ratio >= 0.25 - 1e-6}},
                       {{"grid_points", 100000}}, opt, elapsed())
                       .dump(2)
                << "\n";
      return min_ratio >= 0.25 - 1e-6 ? 0 : kExitNumerical;
    }

    if (cmd_chiti->parsed()) {
      const Dimension N(ch_dim);
      const double q = ch_q == "inf" ? INFINITY : std::stod(ch_q);
      if (!(ch_r > 0.0) || !(q > ch_r)) {
        std::cerr << "chiti: need 0 < r < q\n";
        return kExitUsage;
      }
      const ChitiData data = build_chiti(N, ch_lambda);
      const double C = chiti_constant(data, ch_r, q);
      ChitiData scaled = data;
      scaled.z_star.values *= 4.0;
      const bool self_test = chiti_constant(scaled, ch_r, q) == C;
      std::cout << run_result("chiti",
                              {{"dim", ch_dim}, {"lambda", ch_lambda}, {"r", ch_r}, {"q", ch_q}},
                              {{"C", C},
                               {"r_tilde", data.r_tilde},
                               {"L_tilde", data.L_tilde},
                               {"scale_invariance_self_test", self_test}},
                              {{"ivp_steps", 200000}}, opt, elapsed())
                       .dump(2)
                << "\n";
      return self_test ? 0 : kExitNumerical;
    }

    if (cmd_dom->parsed()) {
      if (dm_count < 1) {
        std::cerr << "domain-spectrum: --count must be >= 1\n";
        return kExitUsage;
      }
      RasterDomain dom;
      try {
        dom = parse_mask_file(dm_mask);
      } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
      }
      const FieldEigen fe = eigenpairs(dom, dm_count, dm_tol);
      if (opt.format == "csv") {
        print_spectrum_csv(fe.spectrum);
      } else {
        std::cout << run_result("domain-spectrum", {{"mask", dm_mask}, {"count", dm_count}},
                                {{"spectrum", spectrum_json(fe.spectrum)},
                                 {"cells", dom.active_count()},
                                 {"measure", dom.total_measure()}},
                                {{"tol", dm_tol}, {"h", dom.h}}, opt, elapsed())
                         .dump(2)
                  << "\n";
      }
      return 0;
    }

    if (cmd_tor->parsed()) {
      RasterDomain dom;
      try {
        dom = parse_mask_file(to_mask);
      } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
      }
      const TorsionField tf = torsion(dom);
      if (!to_dump.empty()) {
        std::FILE* f = std::fopen(to_dump.c_str(), "w");
        if (!f) {
          std::cerr << "torsion: cannot open " << to_dump << "\n";
          return kExitUsage;
        }
        std::fprintf(f, "i,j,x,y,w\n");
        const auto dof = dom.dof_map();
        for (int j = 0; j < dom.ny; ++j)
          for (int i = 0; i < dom.nx; ++i)
            if (dom.active(i, j)) {
              const Eigen::Vector2d c = dom.cell_center(i, j);
              std::fprintf(f, "%d,%d,%.15g,%.15g,%.15g\n", i, j, c.x(), c.y(),
                           tf.w[dof[static_cast<std::size_t>(j) * dom.nx + i]]);
            }
        std::fclose(f);
      }
      std::cout << run_result("torsion", {{"mask", to_mask}},
                              {{"cells", dom.active_count()},
                               {"min_w", tf.w.minCoeff()},
                               {"max_w", tf.w.maxCoeff()},
                               {"residual", tf.residual},
                               {"positive", tf.w.minCoeff() > 0.0}},
                              {{"h", dom.h}}, opt, elapsed())
                       .dump(2)
                << "\n";
      return 0;
    }

    if (cmd_shape->parsed()) {
      const double c = sh_c > 0.0 ? sh_c : ball_volume(Dimension(2), 1.0);
      if (!sh_experiment.empty()) {
        if (sh_experiment != "k2") {
          std::cerr << "shape-search: unknown experiment '" << sh_experiment << "'\n";
          return kExitUsage;
        }
        json rep = experiment_k2(c, sh_h);
        if (opt.timing) rep["runtime_seconds"] = elapsed();
        std::cout << rep.dump(2) << "\n";
        return 0;
      }
      if (sh_k < 1 || sh_balls < 1) {
        std::cerr << "shape-search: need k >= 1 and balls >= 1\n";
        return kExitUsage;
      }
      BallFamilyConfig init;
      for (int i = 0; i < sh_balls; ++i) {
        init.centers.push_back(sh_balls == 1 ? 0.0 : -0.8 + 1.6 * i / (sh_balls - 1.0));
        init.radii.push_back(std::max(0.2, 0.6 - 0.1 * i));
      }
      const ObjectiveSpec spec{sh_k, c, sh_h};
      const NelderMeadResult nm = nelder_mead(spec, init, sh_tol, sh_budget);
      std::cout << run_result("shape-search",
                              {{"k", sh_k},
                               {"c", c},
                               {"h", sh_h},
                               {"balls", sh_balls},
                               {"budget", sh_budget},
                               {"tol", sh_tol}},
                              {{"value", nm.value},
                               {"centers", nm.best.centers},
                               {"radii", nm.best.radii},
                               {"evaluations", nm.evaluations},
                               {"budget_exhausted", nm.budget_exhausted}},
                              json::object(), opt, elapsed())
                       .dump(2)
                << "\n";
      return 0;
    }

    if (cmd_verify->parsed()) {
      const auto results = run_verification(vf_quick, vf_seed);
      int failures = 0;
      json arr = json::array();
      for (const auto& r : results) {
        if (!r.pass) ++failures;
        std::fprintf(stderr, "[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                     r.detail.c_str());
        arr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      }
      std::cout << run_result("verify", {{"quick", vf_quick}, {"seed", vf_seed}},
                              {{"checks", arr},
                               {"total", results.size()},
                               {"failures", failures}},
                              json::object(), opt, elapsed())
                       .dump(2)
                << "\n";
      return failures == 0 ? 0 : kExitVerification;
    }
  } catch (const InfeasibleTargetError& e) {
    std::cerr << e.what() << " (measured infimum " << e.measured_infimum() << ")\n";
    return kExitNumerical;
  } catch (const ConvergenceError& e) {
    std::cerr << e.what() << " (best residual " << e.best_residual() << ")\n";
    return kExitNumerical;
  } catch (const OverlapError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
