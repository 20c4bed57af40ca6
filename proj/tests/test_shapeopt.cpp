#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "driftspec/field2d.hpp"
#include "driftspec/measure.hpp"
#include "driftspec/radial.hpp"
#include "driftspec/shapeopt.hpp"

#include <cmath>

using namespace driftspec;

namespace {
const double kBudget = ball_volume(Dimension(2), 1.0);
}

TEST_CASE("projection onto the volume constraint") {
  // single centered ball: radius is the exact inverse volume
  const BallFamilyConfig one = project_to_constraint({{0.0}, {0.37}}, kBudget);
  CHECK(one.radii[0] == doctest::Approx(radius_of_volume(Dimension(2), kBudget)).epsilon(1e-8));
  CHECK(one.feasible);

  // two symmetric balls carry half the budget each
  const BallFamilyConfig two = project_to_constraint({{-1.0, 1.0}, {0.5, 0.5}}, kBudget);
  const double v0 = offcenter_ball_volume({two.centers[0], 0.0}, two.radii[0]);
  CHECK(v0 == doctest::Approx(0.5 * kBudget).epsilon(1e-7));
  CHECK(two.feasible);

  // idempotent
  const BallFamilyConfig again = project_to_constraint(two, kBudget);
  CHECK(again.radii[0] == doctest::Approx(two.radii[0]).epsilon(1e-10));

  // scaling that breaks disjointness is flagged
  const BallFamilyConfig tight = project_to_constraint({{-0.7, 0.7}, {0.5, 0.5}}, 4.0 * kBudget);
  CHECK_FALSE(tight.feasible);
}

TEST_CASE("objective: merged spectra and the centered fast path") {
  const ObjectiveSpec spec1{1, kBudget, 1.0 / 64};
  // k = 1 on a multi-ball family: min over components
  BallFamilyConfig two = project_to_constraint({{-1.2, 1.2}, {0.8, 0.4}}, kBudget);
  const double f_two = objective(two, spec1);
  BallFamilyConfig big;
  big.centers = {two.centers[0]};
  big.radii = {two.radii[0]};
  BallFamilyConfig small;
  small.centers = {two.centers[1]};
  small.radii = {two.radii[1]};
  const double f_big = objective(big, spec1);
  const double f_small = objective(small, spec1);
  CHECK(f_two == doctest::Approx(std::min(f_big, f_small)).epsilon(1e-9));

  // k = 2 on two identical balls equals one component's lambda_1: the merged
  // spectrum holds the same value twice
  const ObjectiveSpec spec2{2, kBudget, 1.0 / 64};
  BallFamilyConfig sym = project_to_constraint({{-1.0, 1.0}, {0.5, 0.5}}, kBudget);
  const double f_sym = objective(sym, spec2);
  BallFamilyConfig lone;
  lone.centers = {sym.centers[0]};
  lone.radii = {sym.radii[0]};
  CHECK(f_sym == doctest::Approx(objective(lone, spec1)).epsilon(1e-6));

  // centered single ball routes through the radial solver; the fast path
  // skips Richardson, so agreement is at the n = 2048 discretization level
  const BallFamilyConfig ctr = project_to_constraint({{0.0}, {1.0}}, kBudget);
  CHECK(objective(ctr, spec1) ==
        doctest::Approx(lambda1_ball(Dimension(2), ctr.radii[0])).epsilon(1e-6));

  // off-center single ball of equal volume does worse (Faber-Krahn)
  const BallFamilyConfig off = project_to_constraint({{0.5}, {1.0}}, kBudget);
  CHECK(objective(off, spec1) > objective(ctr, spec1));

  // infeasible configurations get the penalty sentinel
  BallFamilyConfig bad = sym;
  bad.feasible = false;
  CHECK(objective(bad, spec2) >= 1e6);
}

TEST_CASE("three-ball families project and evaluate") {
  BallFamilyConfig three{{-1.6, 0.0, 1.6}, {0.45, 0.6, 0.45}};
  const BallFamilyConfig p = project_to_constraint(three, kBudget);
  CHECK(p.feasible);
  double tot = 0.0;
  for (int i = 0; i < p.count(); ++i)
    tot += offcenter_ball_volume({p.centers[i], 0.0}, p.radii[i]);
  CHECK(tot == doctest::Approx(kBudget).epsilon(1e-8));
  // k = 1 over three components: the centered one wins
  const ObjectiveSpec spec{1, kBudget, 1.0 / 32};
  BallFamilyConfig mid;
  mid.centers = {p.centers[1]};
  mid.radii = {p.radii[1]};
  CHECK(objective(p, spec) == doctest::Approx(objective(mid, spec)).epsilon(1e-9));
}

TEST_CASE("nelder-mead contracts") {
  const ObjectiveSpec spec{1, kBudget, 1.0 / 32};
  BallFamilyConfig init{{-0.7, 0.7}, {0.55, 0.45}};
  const NelderMeadResult run = nelder_mead(spec, init, 1e-4, 120);
  CHECK(run.evaluations <= 120);
  // trace of best values is nonincreasing
  for (std::size_t i = 1; i < run.trace.size(); ++i) CHECK(run.trace[i] <= run.trace[i - 1]);
  // restarting from the returned best cannot lose ground: the init vertex is
  // re-evaluated first and the best-so-far includes it
  const NelderMeadResult again = nelder_mead(spec, run.best, 1e-4, 120);
  CHECK(again.value <= run.value + 1e-12);
}
