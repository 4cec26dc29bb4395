#include <doctest.h>

#include <cmath>
#include <string>

#include "flyby/core.hpp"
#include "flyby/inclination_tables.hpp"
#include "flyby/parallax.hpp"
#include "support/oracles.hpp"

using namespace flyby;
using namespace flyby::testing;

namespace {

const PhysicalParams kEarth = PhysicalParams::earth();

// Delaunay set with true anomaly f on a conic of eccentricity e.
HyperbolicDelaunay at_anomaly(double f, double e, double inc = 0.7, double g = 0.4, double h = 0.3) {
  const double u = hyperbolic_from_true(f, e);
  return delaunay_from_elements({10000.0, e, inc, h, g, e * std::sinh(u) - u}, kEarth);
}

// Hamiltonian pieces in Delaunay variables (templated for differentiation).
template <class T>
T kepler_term(const BasicDelaunay<T>& d) {
  return kepler_hamiltonian(polar_from_delaunay(d, kEarth.mu), kEarth.mu);
}

template <class T>
T main_term(const BasicDelaunay<T>& d) {
  return main_problem_j2_term(polar_from_delaunay(d, kEarth.mu), kEarth);
}

// Radial intermediary, first and second order, written out independently.
template <class T>
T intermediary_term(const BasicDelaunay<T>& d) {
  const auto ps = polar_from_delaunay(d, kEarth.mu);
  const T p = d.G * d.G / kEarth.mu;
  const T c = d.H / d.G;
  const T a2p2 = kEarth.alpha * kEarth.alpha / (p * p);
  return -0.25 * a2p2 * (3.0 * c * c - 1.0) * ps.Theta * ps.Theta / (ps.r * ps.r);
}

double intermediary_second(const HyperbolicDelaunay& d) {
  const PolarState ps = polar_from_delaunay(d, kEarth.mu);
  const double p = d.G * d.G / kEarth.mu;
  const double s2 = 1.0 - (d.H / d.G) * (d.H / d.G);
  const double a4p4 = std::pow(kEarth.alpha / p, 4);
  return -(ps.Theta * ps.Theta / (ps.r * ps.r)) * a4p4 * (21.0 * s2 * s2 - 42.0 * s2 + 20.0) / 16.0;
}

template <class F>
Gradient grad(F&& fn, const HyperbolicDelaunay& d) {
  return value_and_gradient(std::forward<F>(fn), d).second;
}

// Largest component residual, normalised per component.
double map_residual(const PolarState& a, const PolarState& b) {
  return std::max({std::fabs(a.r - b.r) / b.r, std::fabs(wrap_angle(a.theta - b.theta)),
                   std::fabs(wrap_angle(a.nu - b.nu)), std::fabs(a.R - b.R) / (b.Theta / b.r),
                   std::fabs(a.Theta - b.Theta) / b.Theta, std::fabs(a.N - b.N) / b.Theta});
}

}  // namespace

TEST_CASE("inclination tables: spot entries") {
  const auto& t = InclinationTables::instance();
  CHECK(t.q(0, 0, 2)(1.0) == -264.0);
  CHECK(render_inclination_polynomial(t.q(0, 0, 2).coeff) == "-360 s^4 + 96 s^2");
  for (double s2 : {0.0, 0.3, 1.0}) CHECK(t.p(2, 2, 6)(s2) == 3.0);
  CHECK(t.q(0, 3, 0).is_zero());
  CHECK(t.q(5, 0, 0).is_zero());
  CHECK(t.p(0, 0, 42).is_zero());
}

TEST_CASE("inclination tables: every entry renders back to its factored polynomial") {
  const auto& t = InclinationTables::instance();
  int entries = 0;
  for (int k = 0; k <= 2; ++k) {
    for (int i = 0; i <= 3; ++i) {
      for (int j = InclinationTables::kMinJ; j <= InclinationTables::kMaxJ; ++j) {
        for (const InclinationPoly* poly : {&t.q(k, i, j), &t.p(k, i, j)}) {
          CHECK(expand_inclination_polynomial(poly->printed) == poly->coeff);
          const std::string rendered = render_inclination_polynomial(poly->coeff);
          CHECK(expand_inclination_polynomial(rendered) == poly->coeff);
          if (!poly->is_zero()) ++entries;
        }
      }
    }
  }
  CHECK(entries > 60);
}

TEST_CASE("inclination polynomial parser") {
  CHECK(expand_inclination_polynomial("-24 s^2 (15 s^2-4)") == std::array<long long, 5>{0, 96, -360, 0, 0});
  CHECK(expand_inclination_polynomial("3") == std::array<long long, 5>{3, 0, 0, 0, 0});
  CHECK(expand_inclination_polynomial("s^4 (s^2+1) (s^2-1)") == std::array<long long, 5>{0, 0, -1, 0, 1});
  CHECK(render_inclination_polynomial({0, 0, 0, 0, 0}) == "0");
  CHECK_THROWS_AS(expand_inclination_polynomial("3 s^3"), DomainError);
  CHECK_THROWS_AS(expand_inclination_polynomial("(3 s^2"), DomainError);
  CHECK_THROWS_AS(expand_inclination_polynomial("s^4 s^4 s^2"), DomainError);
}

TEST_CASE("eta policy") {
  CHECK_THROWS_AS(classify_eta(5e-4), DomainError);
  CHECK(classify_eta(0.01) == EtaStatus::warn);
  CHECK(classify_eta(0.2) == EtaStatus::ok);
}

TEST_CASE("C0: equatorial value, periodicity and polar form") {
  const HyperbolicDelaunay eq = delaunay_from_elements({12000.0, 2.5, 0.0, 0.2, 0.9, 0.3}, kEarth);
  const DerivedGeometry g = derive_geometry(eq, kEarth);
  const double a2p2 = std::pow(kEarth.alpha / g.p, 2);
  CHECK(c0_value(eq, kEarth) == doctest::Approx(-0.5 * eq.G * a2p2 * g.eta).epsilon(1e-14));

  StateSampler sampler(5);
  for (int k = 0; k < 200; ++k) {
    HyperbolicDelaunay d = sampler.delaunay(kEarth);
    const double c0 = c0_value(d, kEarth);
    HyperbolicDelaunay shifted = d;
    shifted.g += kPi;
    CHECK(c0_value(shifted, kEarth) == doctest::Approx(c0).epsilon(1e-12));
    HyperbolicDelaunay moved = d;
    moved.ell += 1.3;
    moved.h -= 0.4;
    CHECK(c0_value(moved, kEarth) == c0);
    CHECK(std::fabs(c0_value_polar(to_polar(d, kEarth), kEarth) - c0) < 1e-12 * std::fabs(c0) + 1e-18);
  }
}

TEST_CASE("U1: equatorial reduction and polar form") {
  for (double f : {-1.0, 0.0, 0.5, 1.4}) {
    const HyperbolicDelaunay d = at_anomaly(f, 3.0, 0.0);
    const DerivedGeometry g = derive_geometry(d, kEarth);
    const double a2p2 = std::pow(kEarth.alpha / g.p, 2);
    const double expected = -0.5 * d.G * a2p2 * (g.e * std::sin(g.f) + g.eta);
    CHECK(u1_value(d, kEarth) == doctest::Approx(expected).epsilon(1e-13));
  }
  StateSampler sampler(6);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const HyperbolicDelaunay d = sampler.delaunay(kEarth);
    const double u1 = u1_value(d, kEarth);
    worst = std::max(worst, rel_diff(u1_value_polar(to_polar(d, kEarth), kEarth), u1));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("dual-number gradients agree with Richardson differences") {
  StateSampler sampler(9);
  sampler.e_max = 6.0;
  for (int k = 0; k < 40; ++k) {
    const HyperbolicDelaunay d = sampler.delaunay(kEarth);
    for (Generator which : {Generator::u1, Generator::u2}) {
      const Gradient ad = generator_gradient(which, d, kEarth);
      const auto fd = fd_gradient(
          [&](const HyperbolicDelaunay& x) {
            return which == Generator::u1 ? u1_value(x, kEarth) : u2_value(x, kEarth);
          },
          d);
      double scale = 0.0;
      for (double v : ad) scale = std::max(scale, std::fabs(v) * 1e-6);
      for (std::size_t i = 0; i < 6; ++i) {
        CHECK(std::fabs(ad[i] - fd[i]) < 1e-6 * std::fabs(fd[i]) + scale);
      }
    }
  }
}

TEST_CASE("closed-form Jacobian matches differentiated polar map") {
  StateSampler sampler(10);
  for (int k = 0; k < 200; ++k) {
    const HyperbolicDelaunay d = sampler.delaunay(kEarth);
    const PolarJacobian J = polar_jacobian(d, kEarth);
    BasicDelaunay<Dual6> x;
    x.ell = Dual6::variable(d.ell, kEll);
    x.g = Dual6::variable(d.g, kArgp);
    x.h = Dual6::variable(d.h, kNode);
    x.L = Dual6::variable(d.L, kL);
    x.G = Dual6::variable(d.G, kG);
    x.H = Dual6::variable(d.H, kH);
    const auto ps = polar_from_delaunay(x, kEarth.mu);
    const std::array<const Dual6*, 6> rows{&ps.r, &ps.theta, &ps.nu, &ps.R, &ps.Theta, &ps.N};
    for (std::size_t row = 0; row < 6; ++row) {
      double scale = 0.0;
      for (double v : rows[row]->d) scale = std::max(scale, std::fabs(v));
      for (std::size_t col = 0; col < 6; ++col) {
        CHECK(std::fabs(J[row][col] - rows[row]->d[col]) <= 1e-10 * scale);
      }
    }
  }
}

TEST_CASE("Poisson brackets") {
  StateSampler sampler(12);
  const HyperbolicDelaunay d = sampler.delaunay(kEarth);
  const Gradient zero{};
  for (const auto& row : polar_jacobian(d, kEarth)) CHECK(poisson_bracket(row, zero) == 0.0);
  // Canonical pairs.
  Gradient ell{}, L{};
  ell[kEll] = 1.0;
  L[kL] = 1.0;
  CHECK(poisson_bracket(ell, L) == 1.0);
  CHECK(poisson_bracket(L, ell) == -1.0);
}

TEST_CASE("brackets with U1 reproduce the closed-form first-order series") {
  StateSampler sampler(2024);
  sampler.e_min = 1.2;
  sampler.e_max = 8.0;
  const PolarComponent comps[5] = {PolarComponent::r, PolarComponent::theta, PolarComponent::nu, PolarComponent::R,
                                   PolarComponent::Theta};
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const HyperbolicDelaunay d = sampler.delaunay(kEarth);
    const CorrectionVector cv = first_order_corrections(d, kEarth);
    for (PolarComponent c : comps) {
      worst = std::max(worst, rel_diff(poisson_bracket(c, Generator::u1, d, kEarth), cv[c]));
    }
    CHECK(cv.dN == 0.0);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("nu bracket is the H-derivative of the generator") {
  StateSampler sampler(13);
  for (int k = 0; k < 50; ++k) {
    const HyperbolicDelaunay d = sampler.delaunay(kEarth);
    const Gradient gu = generator_gradient(Generator::u1, d, kEarth);
    CHECK(poisson_bracket(PolarComponent::nu, Generator::u1, d, kEarth) == doctest::Approx(gu[kH]).epsilon(1e-15));
  }
}

TEST_CASE("equatorial first-order corrections keep Theta") {
  const CorrectionVector cv = first_order_corrections(at_anomaly(0.8, 2.0, 0.0), kEarth);
  CHECK(cv.dTheta == 0.0);
  CHECK(cv.dN == 0.0);
  const CorrectionVector cv2 = second_order_corrections(at_anomaly(0.8, 2.0, 0.0), kEarth);
  CHECK(std::fabs(cv2.dTheta) < 1e-9 * std::fabs(first_order_corrections(at_anomaly(0.8, 2.0, 0.9), kEarth).dTheta));
  CHECK(cv2.dN == 0.0);
}

TEST_CASE("first-order homological equation") {
  StateSampler sampler(14);
  for (int k = 0; k < 100; ++k) {
    const HyperbolicDelaunay d = sampler.delaunay(kEarth);
    const double m10 = main_term(d);
    const double m01 = intermediary_term(d);
    const double lhs = m10 + poisson_bracket(grad([](const auto& x) { return kepler_term(x); }, d),
                                             generator_gradient(Generator::u1, d, kEarth));
    CHECK(std::fabs(lhs - m01) < 1e-10 * (std::fabs(m10) + std::fabs(m01)));
  }
}

TEST_CASE("second-order homological equation") {
  StateSampler sampler(15);
  for (int k = 0; k < 100; ++k) {
    const HyperbolicDelaunay d = sampler.delaunay(kEarth);
    const Gradient gu1 = generator_gradient(Generator::u1, d, kEarth);
    const Gradient gu2 = generator_gradient(Generator::u2, d, kEarth);
    const double t10 = poisson_bracket(grad([](const auto& x) { return main_term(x); }, d), gu1);
    const double t01 = poisson_bracket(grad([](const auto& x) { return intermediary_term(x); }, d), gu1);
    const double t00 = poisson_bracket(grad([](const auto& x) { return kepler_term(x); }, d), gu2);
    const double m02 = intermediary_second(d);
    const double scale = std::fabs(t10) + std::fabs(t01) + std::fabs(t00);
    CHECK(std::fabs(t10 + t01 + t00 - m02) < 1e-9 * scale);
  }
}

TEST_CASE("U2 psi factor vanishes on the incoming asymptote") {
  for (double e : {1.2, 4.0, 15.0}) {
    const double eta = std::sqrt(e * e - 1.0);
    const double finf = asymptote_anomaly(e);
    CHECK(std::fabs(psi_function(-finf, eta)) < 1e-14);
    CHECK(psi_function(0.0, eta) == doctest::Approx(std::atan(eta) - kPi));
    // The pi - f + arctan(eta) form differs by the constant 2 pi.
    CHECK(psi_function(0.3, eta) + 2.0 * kPi == doctest::Approx(kPi - 0.3 + std::atan(eta)).epsilon(1e-15));
  }
}

TEST_CASE("Q constants are the f-free part of U2") {
  const auto& tables = InclinationTables::instance();
  StateSampler sampler(16);
  for (int n = 0; n < 50; ++n) {
    const HyperbolicDelaunay d = sampler.delaunay(kEarth);
    const DerivedGeometry geo = derive_geometry(d, kEarth);
    const double e = geo.e, eta = geo.eta, s2 = geo.s * geo.s, e2 = e * e, e4 = e2 * e2;
    const double a4p4 = std::pow(kEarth.alpha / geo.p, 4);
    const double g = d.g;
    const double secular = ((2.0 * e4 * (15.0 * s2 - 14.0) + 8.0 * (3.0 * e2 - 2.0) * (5.0 * s2 - 4.0)) * s2 *
                                std::cos(2.0 * g) -
                            16.0 * eta * eta * eta * (5.0 * s2 - 4.0) * s2 * std::sin(2.0 * g) -
                            e4 * (5.0 * s2 * s2 + 8.0 * s2 - 8.0)) *
                           (kPi + std::atan(eta));
    double periodic = 0.0;
    for (int k = 0; k <= 2; ++k) {
      double qsum = 0.0, psum = 0.0;
      for (int i = 0; i <= 3; ++i) qsum += tables.q(k, i, 0)(s2) * std::pow(e, 2 * i + 1);
      for (int i = 0; i <= 2; ++i) psum += tables.p(k, i, 0)(s2) * std::pow(e, 2 * i + 1);
      periodic += std::pow(s2, k) * (qsum * std::cos(2.0 * k * g) + eta * psum * std::sin(2.0 * k * g));
    }
    const double expected =
        d.G * a4p4 * 3.0 / 64.0 / e2 * secular + d.G * a4p4 / (256.0 * e2 * e * eta) * periodic;
    CHECK(q_constants(d, kEarth) == doctest::Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("corrections vanish on the incoming asymptote") {
  for (double e : {1.5, 4.0, 10.0}) {
    const double finf = asymptote_anomaly(e);
    const CorrectionVector peri1 = first_order_corrections(at_anomaly(0.0, e), kEarth);
    const CorrectionVector peri2 = second_order_corrections(at_anomaly(0.0, e), kEarth);
    double prev1 = 1e300, prev2 = 1e300;
    for (double delta : {1e-4, 1e-5, 1e-6}) {
      const HyperbolicDelaunay d = at_anomaly(-finf * (1.0 - delta), e);
      const CorrectionVector c1 = first_order_corrections(d, kEarth);
      const CorrectionVector c2 = second_order_corrections(d, kEarth);
      double worst1 = 0.0, worst2 = 0.0;
      for (PolarComponent c : {PolarComponent::r, PolarComponent::theta, PolarComponent::nu, PolarComponent::R,
                               PolarComponent::Theta}) {
        worst1 = std::max(worst1, std::fabs(c1[c] / peri1[c]));
        worst2 = std::max(worst2, std::fabs(c2[c] / peri2[c]));
      }
      CHECK(worst1 < prev1);
      CHECK(worst2 < prev2);
      prev1 = worst1;
      prev2 = worst2;
    }
    CHECK(prev1 < 1e-4);
    CHECK(prev2 < 1e-4);
  }
}

TEST_CASE("radial-velocity corrections vanish on both asymptotes") {
  for (double e : {1.5, 4.0, 10.0}) {
    const double finf = asymptote_anomaly(e);
    const double peri1 = std::fabs(first_order_corrections(at_anomaly(0.0, e), kEarth).dR);
    const double peri2 = std::fabs(second_order_corrections(at_anomaly(0.0, e), kEarth).dR);
    for (double sign : {-1.0, 1.0}) {
      const HyperbolicDelaunay d = at_anomaly(sign * finf * (1.0 - 1e-6), e);
      CHECK(std::fabs(first_order_corrections(d, kEarth).dR) < 1e-4 * peri1);
      CHECK(std::fabs(second_order_corrections(d, kEarth).dR) < 1e-4 * peri2);
    }
  }
}

TEST_CASE("maps are the identity without J2") {
  const PhysicalParams kepler = with_j2(kEarth, 0.0);
  StateSampler sampler(17);
  const PolarState ps = to_polar(sampler.delaunay(kEarth), kEarth);
  for (int order : {1, 2}) {
    const PolarState a = mean_to_osculating(ps, order, kepler);
    const PolarState b = osculating_to_mean(ps, order, kepler);
    CHECK(map_residual(a, ps) == 0.0);
    CHECK(map_residual(b, ps) == 0.0);
  }
  CHECK_THROWS_AS(mean_to_osculating(ps, 3, kEarth), DomainError);
}

TEST_CASE("second-order term carries J2^2/2") {
  // Low orbits and a large J2 keep the difference well above roundoff.
  StateSampler sampler(18);
  sampler.a_max = 10000.0;
  sampler.e_max = 3.0;
  sampler.ell_span = 1.0;
  for (int k = 0; k < 20; ++k) {
    const PolarState ps = to_polar(sampler.delaunay(kEarth), kEarth);
    auto second_part = [&](double j2) {
      const PhysicalParams p = with_j2(kEarth, j2);
      const PolarState a = mean_to_osculating(ps, 2, p);
      const PolarState b = mean_to_osculating(ps, 1, p);
      return a.r - b.r;
    };
    const double full = second_part(0.02);
    const double half = second_part(0.01);
    CHECK(full / half == doctest::Approx(4.0).epsilon(1e-6));
  }
}

TEST_CASE("osculating -> mean -> osculating round trip") {
  const HyperbolicElements e1{2459.38, 4.0, deg2rad(23.5), deg2rad(60.0), deg2rad(90.0), 0.0};
  for (double M : {-3.0, -1.0, 0.0, 0.7, 2.5}) {
    HyperbolicElements el = e1;
    el.M = M;
    const PolarState osc = to_polar(delaunay_from_elements(el, kEarth), kEarth);
    const double r1 = map_residual(mean_to_osculating(osculating_to_mean(osc, 1, kEarth), 1, kEarth), osc);
    const double r2 = map_residual(mean_to_osculating(osculating_to_mean(osc, 2, kEarth), 2, kEarth), osc);
    CHECK(r1 < 5e-6);
    CHECK(r2 < r1 / 100.0);
  }
}

TEST_CASE("first-order map is symplectic to O(J2^2)") {
  StateSampler sampler(19);
  sampler.a_max = 10000.0;
  sampler.e_max = 3.0;
  sampler.ell_span = 1.0;
  auto deviation = [&](const PolarState& ps, double j2) {
    const PhysicalParams p = with_j2(kEarth, j2);
    // Scaled coordinates (r/r0, theta, nu, R r0/Theta0, Theta/Theta0, N/Theta0)
    // keep every conjugate pair on the same footing.
    const double r0 = ps.r, th0 = ps.Theta, v0 = th0 / r0;
    auto image = [&](const std::array<double, 6>& x) {
      PolarState in{x[0] * r0, x[1], x[2], x[3] * v0, x[4] * th0, x[5] * th0};
      const PolarState out = mean_to_osculating(in, 1, p);
      return std::array<double, 6>{out.r / r0, out.theta, out.nu, out.R / v0, out.Theta / th0, out.N / th0};
    };
    const std::array<double, 6> x0{1.0, ps.theta, ps.nu, ps.R / v0, 1.0, ps.N / th0};
    double J[6][6];
    for (int j = 0; j < 6; ++j) {
      const double h = 1e-5;
      auto xp = x0, xm = x0, xp2 = x0, xm2 = x0;
      xp[j] += h;
      xm[j] -= h;
      xp2[j] += 0.5 * h;
      xm2[j] -= 0.5 * h;
      const auto fp = image(xp), fm = image(xm), fp2 = image(xp2), fm2 = image(xm2);
      for (int i = 0; i < 6; ++i) {
        const double d1 = (fp[i] - fm[i]) / (2.0 * h);
        const double d2 = (fp2[i] - fm2[i]) / h;
        J[i][j] = (4.0 * d2 - d1) / 3.0;
      }
    }
    // Conjugate pairs: (r, R) = (0, 3), (theta, Theta) = (1, 4), (nu, N) = (2, 5).
    auto omega = [](int a, int b) {
      if (b == a + 3) return 1.0;
      if (a == b + 3) return -1.0;
      return 0.0;
    };
    double worst = 0.0;
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        double acc = 0.0;
        for (int i = 0; i < 6; ++i)
          for (int k = 0; k < 6; ++k) acc += J[i][a] * omega(i, k) * J[k][b];
        worst = std::max(worst, std::fabs(acc - omega(a, b)));
      }
    }
    return worst;
  };
  for (int k = 0; k < 10; ++k) {
    const PolarState ps = to_polar(sampler.delaunay(kEarth), kEarth);
    const double full = deviation(ps, 0.02);
    const double half = deviation(ps, 0.01);
    CHECK(full < 1e-2);
    CHECK(loglog_slope(0.5, half, 1.0, full) == doctest::Approx(2.0).epsilon(0.15));
  }
}
