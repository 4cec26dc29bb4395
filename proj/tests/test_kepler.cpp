#include <doctest.h>

#include <cmath>

#include "flyby/core.hpp"
#include "flyby/kepler.hpp"
#include "flyby/reference.hpp"
#include "support/oracles.hpp"

using namespace flyby;
using namespace flyby::testing;

TEST_CASE("solver basics") {
  CHECK(solve_hyperbolic_kepler(0.0, 4.0) == 0.0);
  const double u = solve_hyperbolic_kepler(10.0, 4.0);
  CHECK(std::fabs(u - kepler_bisection(10.0, 4.0)) < 1e-13);
  CHECK(std::fabs(4.0 * std::sinh(u) - u - 10.0) < 1e-13);
}

TEST_CASE("E1 mean anomaly") {
  const double ell = deg2rad(-21400.0);
  const double u = solve_hyperbolic_kepler(ell, 4.0);
  CHECK(u < 0.0);
  CHECK(kepler_residual(ell, 4.0, u) < 1e-13);
  CHECK(std::fabs(u - kepler_bisection(ell, 4.0)) < 1e-13 * std::fabs(u));
}

TEST_CASE("residual bound across the e, ell grid") {
  double worst = 0.0;
  for (double e : {1.001, 1.005, 1.05, 1.3, 2.0, 4.0, 8.0, 20.0}) {
    for (int k = -200; k <= 200; ++k) {
      const double ell = std::copysign(std::pow(10.0, std::fabs(k) / 50.0) - 1.0, static_cast<double>(k));
      const double u = solve_hyperbolic_kepler(ell, e);
      worst = std::max(worst, kepler_residual(ell, e, u));
      if (ell != 0.0) CHECK(std::signbit(u) == std::signbit(ell));
    }
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("u is strictly increasing in ell") {
  for (double e : {1.001, 1.5, 10.0}) {
    double prev = solve_hyperbolic_kepler(-50.0, e);
    for (int k = -499; k <= 500; ++k) {
      const double u = solve_hyperbolic_kepler(0.1 * k, e);
      CHECK(u > prev);
      prev = u;
    }
  }
}

TEST_CASE("solver errors") {
  CHECK_THROWS_AS(solve_hyperbolic_kepler(1.0, 1.0), NotHyperbolicError);
  CHECK_THROWS_AS(solve_hyperbolic_kepler(1.0, 0.5), NotHyperbolicError);
  KeplerSolverConfig tight;
  tight.max_iter = 1;
  try {
    solve_hyperbolic_kepler(5000.0, 1.001, tight);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& ex) {
    CHECK(ex.last_residual() > 0.0);
  }
}

TEST_CASE("anomaly conversions") {
  CHECK(true_from_hyperbolic(0.0, 3.0) == 0.0);
  for (double e : {1.005, 1.1, 4.0}) {
    CHECK(std::cos(true_from_hyperbolic(30.0, e)) == doctest::Approx(-1.0 / e).epsilon(1e-10));
    CHECK(std::cos(true_from_hyperbolic(-30.0, e)) == doctest::Approx(-1.0 / e).epsilon(1e-10));
    CHECK(std::cos(asymptote_anomaly(e)) == doctest::Approx(-1.0 / e).epsilon(1e-15));

    const double finf = asymptote_anomaly(e);
    for (int k = -99; k <= 99; ++k) {
      const double f = 0.99 * finf * k / 99.0;
      const double u = hyperbolic_from_true(f, e);
      CHECK(std::fabs(true_from_hyperbolic(u, e) - f) < 1e-11);
      CHECK(std::fabs(std::sqrt(e + 1.0) * std::tanh(0.5 * u) - std::sqrt(e - 1.0) * std::tan(0.5 * f)) < 1e-13);
      if (f != 0.0) CHECK(std::signbit(u) == std::signbit(f));
    }
    CHECK_THROWS_AS(hyperbolic_from_true(finf, e), DomainError);
    CHECK_THROWS_AS(hyperbolic_from_true(-1.01 * finf, e), DomainError);
  }
}

TEST_CASE("hyperbolic anomaly derivatives by implicit differentiation") {
  using D = Dual<2>;
  const double ell = 2.5, e = 1.7;
  const D u = hyperbolic_anomaly(D::variable(ell, 0), D::variable(e, 1));
  const double due_dell = richardson_derivative([&](double x) { return solve_hyperbolic_kepler(x, e); }, ell, 1e-3);
  const double due_de = richardson_derivative([&](double x) { return solve_hyperbolic_kepler(ell, x); }, e, 1e-4);
  CHECK(u.d[0] == doctest::Approx(due_dell).epsilon(1e-9));
  CHECK(u.d[1] == doctest::Approx(due_de).epsilon(1e-9));
}

TEST_CASE("Kepler flow") {
  const PhysicalParams earth = PhysicalParams::earth();
  const HyperbolicDelaunay d =
      delaunay_from_elements({2459.38, 4.0, deg2rad(23.5), deg2rad(60.0), deg2rad(90.0), deg2rad(-21400.0)}, earth);
  const double n = mean_motion(d, earth.mu);
  CHECK(n > 0.0);
  CHECK(n == doctest::Approx(std::sqrt(earth.mu / std::pow(2459.38, 3))).epsilon(1e-14));

  const HyperbolicDelaunay same = kepler_propagate(d, 0.0, earth);
  CHECK(same.ell == d.ell);
  const HyperbolicDelaunay fwd = kepler_propagate(d, 3600.0, earth);
  CHECK(fwd.ell == doctest::Approx(d.ell + n * 3600.0).epsilon(1e-15));
  CHECK(fwd.g == d.g);
  CHECK(fwd.h == d.h);
  CHECK(fwd.L == d.L);
  CHECK(fwd.G == d.G);
  CHECK(fwd.H == d.H);
  const HyperbolicDelaunay back = kepler_propagate(fwd, -3600.0, earth);
  CHECK(std::fabs(back.ell - d.ell) < 1e-12 * std::fabs(d.ell));
}

TEST_CASE("E1 Kepler flow against numerical two-body integration") {
  const PhysicalParams earth = PhysicalParams::earth();
  const HyperbolicDelaunay d =
      delaunay_from_elements({2459.38, 4.0, deg2rad(23.5), deg2rad(60.0), deg2rad(90.0), deg2rad(-21400.0)}, earth);
  const CartesianState cs0 = polar_to_cartesian(to_polar(d, earth));
  std::vector<double> grid;
  for (int k = 1; k <= 36; ++k) grid.push_back(3600.0 * k);
  const Trajectory num = integrate_two_body(cs0, grid, earth.mu);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const CartesianState cs = polar_to_cartesian(to_polar(kepler_propagate(d, grid[k], earth), earth));
    worst = std::max(worst, norm(cs.position - num.states[k].position));
  }
  CHECK(worst < 1e-3);  // km
}
