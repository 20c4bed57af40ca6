#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "driftspec/measure.hpp"
#include "driftspec/quadrature.hpp"
#include "driftspec/special.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace driftspec;

TEST_CASE("gamma recurrence and unit ball volumes") {
  CHECK(gamma_half_integer(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma_half_integer(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-15));
  CHECK(gamma_half_integer(2.5) == doctest::Approx(0.75 * std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(gamma_half_integer(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(unit_ball_volume(Dimension(2)) == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(unit_ball_volume(Dimension(3)) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-14));
  CHECK(unit_ball_volume(Dimension(4)) == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-14));
}

TEST_CASE("adaptive quadrature basics") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::exp(0.5 * x * x) * x; }, 0.0, 5.0) ==
        doctest::Approx(std::expm1(12.5)).epsilon(1e-13));
  // integrable endpoint singularity
  CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-13) ==
        doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("shell_density closed forms") {
  const Dimension d2(2), d3(3);
  CHECK(shell_density(d2, 0.0) == 0.0);
  CHECK(shell_density(d2, 1.0) == doctest::Approx(2.0 * M_PI * std::exp(0.5)).epsilon(1e-14));
  CHECK(shell_density(d3, 1.0) == doctest::Approx(4.0 * M_PI * std::exp(0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(shell_density(d2, -0.1), std::domain_error);
}

TEST_CASE("ball_volume closed form and Simpson oracle") {
  const Dimension d2(2), d3(3);
  CHECK(ball_volume(d2, 0.0) == 0.0);
  CHECK(ball_volume(d2, 1.0) ==
        doctest::Approx(2.0 * M_PI * (std::exp(0.5) - 1.0)).epsilon(1e-14));
  // the generic quadrature path must match the N = 2 closed form
  for (double r : {0.4, 1.0, 2.5, 4.0})
    CHECK(detail::ball_volume_quadrature(d2, r) ==
          doctest::Approx(2.0 * M_PI * std::expm1(0.5 * r * r)).epsilon(1e-12));
  // independent composite-Simpson oracle at 1e6 panels, frozen value alongside
  const double oracle =
      oracles::simpson([&](double t) { return shell_density(d3, t); }, 0.0, 1.0, 1000000);
  CHECK(oracle == doctest::Approx(5.702161679363).epsilon(1e-12));
  CHECK(ball_volume(d3, 1.0) == doctest::Approx(oracle).epsilon(1e-10));
  CHECK_THROWS_AS(ball_volume(d3, -1.0), std::domain_error);
}

TEST_CASE("radius_of_volume inverts ball_volume") {
  const Dimension d2(2), d3(3);
  CHECK(radius_of_volume(d2, 2.0 * M_PI * (std::exp(0.5) - 1.0)) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(radius_of_volume(d2, 0.0) == 0.0);
  CHECK(radius_of_volume(d3, 0.0) == 0.0);
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double r = 5.0 * unif(rng) + 1e-3;
    for (int N : {2, 3}) {
      const Dimension dn(N);
      CHECK(radius_of_volume(dn, ball_volume(dn, r)) == doctest::Approx(r).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(radius_of_volume(d2, -1.0), std::domain_error);
}

TEST_CASE("isoperimetric profile") {
  const Dimension d2(2), d3(3);
  for (double s : {0.1, 1.0, 3.7, 20.0}) {
    const double closed = (2.0 * M_PI + s) * std::sqrt(2.0 * std::log(1.0 + s / (2.0 * M_PI)));
    CHECK(isoperimetric_profile(d2, s) == doctest::Approx(closed).epsilon(1e-12));
  }
  // small-volume limit I(s)/s^{1-1/N} -> N omega_N^{1/N}
  const double s_small = 1e-8;
  CHECK(isoperimetric_profile(d2, s_small) / std::sqrt(s_small) ==
        doctest::Approx(2.0 * std::sqrt(M_PI)).epsilon(1e-3));
  // N = 3 through composed independent oracles: Simpson H plus bisected inverse
  {
    auto H = [&](double r) {
      return oracles::simpson([&](double t) { return shell_density(d3, t); }, 0.0, r, 20000);
    };
    double lo = 0.0, hi = 2.0;
    while (H(hi) < 1.0) hi *= 2.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (H(mid) < 1.0 ? lo : hi) = mid;
    }
    const double r_inv = 0.5 * (lo + hi);
    CHECK(isoperimetric_profile(d3, 1.0) ==
          doctest::Approx(shell_density(d3, r_inv)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(isoperimetric_profile(d2, 0.0), std::domain_error);
  // increasing in s
  double prev = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double v = isoperimetric_profile(d3, 0.3 * i);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("offcenter ball volume") {
  const Dimension d2(2);
  CHECK(offcenter_ball_volume({0.0, 0.0}, 1.0) ==
        doctest::Approx(ball_volume(d2, 1.0)).epsilon(1e-10));
  // radial symmetry of the weight: same center norm, same volume
  const double v_east = offcenter_ball_volume({0.7, 0.0}, 0.4);
  CHECK(offcenter_ball_volume({-0.7, 0.0}, 0.4) == v_east);
  CHECK(offcenter_ball_volume({0.0, 0.7}, 0.4) == v_east);
  // midpoint oracle; boundary cells limit it to ~h^1.5, so 1e8 points are
  // needed to certify 1e-6
  const double oracle = oracles::disk_weighted_volume_midpoint(1.0, 0.0, 0.5, 100000000);
  const double lib = offcenter_ball_volume({1.0, 0.0}, 0.5);
  CHECK(lib == doctest::Approx(1.423781130856).epsilon(1e-10));
  CHECK(lib == doctest::Approx(oracle).epsilon(1e-6));
  // crude weight sandwich
  const double area = M_PI * 0.5 * 0.5;
  CHECK(lib >= area * std::exp(0.5 * 0.25));
  CHECK(lib <= area * std::exp(0.5 * 2.25));
  CHECK_THROWS_AS(offcenter_ball_volume({1.0, 0.0}, 0.0), std::domain_error);
}
