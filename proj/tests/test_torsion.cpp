#include <doctest.h>

#include <cmath>

#include "flyby/core.hpp"
#include "flyby/torsion.hpp"
#include "support/oracles.hpp"

using namespace flyby;
using namespace flyby::testing;

namespace {

const PhysicalParams kEarth = PhysicalParams::earth();

// Low, tightly bound states make the J2 terms large enough to measure.
PolarState sample_prime(StateSampler& s, double cinc) {
  const double Theta = std::sqrt(kEarth.mu * s.uniform(7000.0, 12000.0));
  return {s.uniform(6600.0, 20000.0), s.uniform(-2.0, 2.0), s.uniform(-3.0, 3.0),
          s.uniform(-5.0, 5.0),       Theta,                 cinc * Theta};
}

// Radial intermediary through second order, written from its Hamiltonian
// terms in the prime variables.
double intermediary(const PolarState& ps, const PhysicalParams& params) {
  const double p = ps.Theta * ps.Theta / params.mu;
  const double c2 = (ps.N / ps.Theta) * (ps.N / ps.Theta);
  const double s2 = 1.0 - c2;
  const double ap2 = (params.alpha / p) * (params.alpha / p);
  const double w = ps.Theta * ps.Theta / (ps.r * ps.r);
  const double m01 = -0.25 * ap2 * (3.0 * c2 - 1.0) * w;
  const double m02 = -w * ap2 * ap2 * (21.0 * s2 * s2 - 42.0 * s2 + 20.0) / 16.0;
  return kepler_hamiltonian(ps, params.mu) + params.j2 * m01 + 0.5 * params.j2 * params.j2 * m02;
}

PhysicalParams strong(double j2) { return with_j2(kEarth, j2); }

}  // namespace

TEST_CASE("torsion factor identities") {
  for (int order : {1, 2}) {
    CHECK(phi(50000.0, 20000.0, with_j2(kEarth, 0.0), order) == 1.0);
  }
  const double Theta = 60000.0;
  const double N = Theta / std::sqrt(3.0);
  const TorsionContext ctx = torsion_context(Theta, N, kEarth, 2);
  CHECK(phi(Theta, N, kEarth, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(phi(Theta, N, kEarth, 2) ==
        doctest::Approx(std::sqrt(1.0 - ctx.epsilon * ctx.epsilon / 3.0)).epsilon(1e-15));
  CHECK(ctx.epsilon < 0.0);
  CHECK_THROWS_AS(phi(Theta, N, kEarth, 3), DomainError);
  CHECK_THROWS_AS(phi(-1.0, N, kEarth, 1), DomainError);
}

TEST_CASE("derivatives of Phi^2 agree with difference quotients") {
  for (int order : {1, 2}) {
    for (double c : {-0.9, 0.1, 0.7, 1.05}) {
      TorsionContext ctx{-0.01, c, order};
      const double de = richardson_derivative(
          [&](double x) {
            TorsionContext t = ctx;
            t.epsilon = x;
            return t.phi2();
          },
          ctx.epsilon, 1e-3);
      const double dc = richardson_derivative(
          [&](double x) {
            TorsionContext t = ctx;
            t.cinc = x;
            return t.phi2();
          },
          c, 1e-3);
      CHECK(ctx.dphi2_deps() == doctest::Approx(de).epsilon(1e-10));
      CHECK(ctx.dphi2_dc() == doctest::Approx(dc).epsilon(1e-9));
    }
  }
}

TEST_CASE("forward torsion without J2 is the identity") {
  StateSampler s(1);
  const PolarState ps = sample_prime(s, 0.4);
  for (int order : {1, 2}) {
    const PolarState out = torsion_forward(ps, with_j2(kEarth, 0.0), order);
    CHECK(out.theta == ps.theta);
    CHECK(out.nu == ps.nu);
    CHECK(out.Theta == ps.Theta);
  }
}

TEST_CASE("forward torsion leaves r, R and N untouched") {
  StateSampler s(2);
  for (int k = 0; k < 100; ++k) {
    const PolarState ps = sample_prime(s, s.uniform(-1.0, 1.0));
    const PolarState out = torsion_forward(ps, kEarth, 1 + k % 2);
    CHECK(out.r == ps.r);
    CHECK(out.R == ps.R);
    CHECK(out.N == ps.N);
  }
}

TEST_CASE("forward torsion is canonical") {
  // Jacobian of (theta, nu, Theta, N) -> star by differences; the symplectic
  // form on the pairs (theta, Theta), (nu, N) must be preserved.
  StateSampler s(3);
  const PhysicalParams params = strong(0.05);
  for (int order : {1, 2}) {
    for (int k = 0; k < 20; ++k) {
      const PolarState ps = sample_prime(s, s.uniform(-0.95, 0.95));
      const double T0 = ps.Theta;
      auto image = [&](const std::array<double, 4>& x) {
        PolarState in = ps;
        in.theta = x[0];
        in.nu = x[1];
        in.Theta = x[2] * T0;
        in.N = x[3] * T0;
        const PolarState out = torsion_forward(in, params, order);
        return std::array<double, 4>{out.theta, out.nu, out.Theta / T0, out.N / T0};
      };
      const std::array<double, 4> x0{ps.theta, ps.nu, 1.0, ps.N / T0};
      double J[4][4];
      for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 4; ++i) {
          J[i][j] = richardson_derivative(
              [&](double v) {
                auto x = x0;
                x[j] = v;
                return image(x)[i];
              },
              x0[j], 1e-4);
        }
      }
      auto omega = [](int a, int b) { return b == a + 2 ? 1.0 : (a == b + 2 ? -1.0 : 0.0); };
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          double acc = 0.0;
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) acc += J[i][a] * omega(i, j) * J[j][b];
          CHECK(std::fabs(acc - omega(a, b)) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("intermediary becomes the Kepler Hamiltonian in star variables") {
  StateSampler s(4);
  for (int k = 0; k < 200; ++k) {
    const PolarState ps = sample_prime(s, s.uniform(-1.0, 1.0));
    const PolarState star = torsion_forward(ps, kEarth, 2);
    const double h = intermediary(ps, kEarth);
    CHECK(kepler_hamiltonian(star, kEarth.mu) == doctest::Approx(h).epsilon(1e-13));
  }
}

TEST_CASE("root-finding inverse round trip") {
  StateSampler s(5);
  const PhysicalParams params = strong(0.02);
  for (int order : {1, 2}) {
    for (int k = 0; k < 200; ++k) {
      const PolarState ps = sample_prime(s, s.uniform(-1.0, 1.0));
      const PolarState star = torsion_forward(ps, params, order);
      const PolarState back = torsion_inverse_rootfind(star, params, order);
      CHECK(rel_diff(back.Theta, ps.Theta) < 1e-12);
      CHECK(std::fabs(back.theta - ps.theta) < 1e-12 * std::max(1.0, std::fabs(ps.theta)));
      CHECK(std::fabs(back.nu - ps.nu) < 1e-12 * std::max(1.0, std::fabs(ps.nu)));
      CHECK(std::fabs(back.Theta * phi(back.Theta, back.N, params, order) - star.Theta) < 1e-13 * star.Theta);
    }
  }
}

TEST_CASE("root-finding inverse accepts N/Theta* > 1") {
  const double Theta = std::sqrt(kEarth.mu * 8000.0);
  const PolarState ps{7000.0, 0.3, 0.2, 1.0, Theta, Theta};
  const PolarState star = torsion_forward(ps, kEarth, 1);
  CHECK(torsion_degenerate(star));
  const PolarState back = torsion_inverse_rootfind(star, kEarth, 1);
  CHECK(rel_diff(back.Theta, Theta) < 1e-12);
  CHECK_FALSE(torsion_degenerate(ps));
}

TEST_CASE("series inverse error scales as eps^(order+1)") {
  StateSampler s(6);
  for (int k = 0; k < 10; ++k) {
    const PolarState ps = sample_prime(s, s.uniform(-0.9, 0.9));
    for (int order : {1, 2}) {
      auto error = [&](double j2) {
        const PhysicalParams params = strong(j2);
        const PolarState star = torsion_forward(ps, params, order);
        const PolarState series = torsion_inverse_series(star, params, order);
        const PolarState exact = torsion_inverse_rootfind(star, params, order);
        return std::fabs(series.Theta - exact.Theta) / exact.Theta;
      };
      const double big = error(0.02), small = error(0.01);
      CHECK(loglog_slope(0.01, small, 0.02, big) == doctest::Approx(order + 1.0).epsilon(0.05));
    }
  }
}

TEST_CASE("series inverse at the critical inclination") {
  // First order leaves Theta alone; second order adds Theta* eps^2/6, the
  // expansion of 1/sqrt(1 - eps^2/3).
  const double Ts = 70000.0;
  const double N = Ts / std::sqrt(3.0);
  const double eps = torsion_context(Ts, N, kEarth, 2).epsilon;
  CHECK(torsion_series_theta(Ts, N, kEarth, 1) == Ts);
  CHECK(torsion_series_theta(Ts, N, kEarth, 2) == doctest::Approx(Ts * (1.0 + eps * eps / 6.0)).epsilon(1e-15));
}

TEST_CASE("series inverse recovers equatorial states exactly") {
  const double Theta = std::sqrt(kEarth.mu * 9000.0);
  for (double sign : {1.0, -1.0}) {
    const PolarState ps{8000.0, 1.1, 0.0, 2.0, Theta, sign * Theta};
    for (int order : {1, 2}) {
      const PolarState back = torsion_inverse_series(torsion_forward(ps, kEarth, order), kEarth, order);
      CHECK(back.Theta == std::fabs(ps.N));
      CHECK(std::fabs(back.theta - ps.theta) < 1e-14);
    }
  }
}

TEST_CASE("non-positive radicand is rejected") {
  const PhysicalParams params = strong(1e4);
  const double Theta = std::sqrt(params.mu * 7000.0);
  CHECK_THROWS_AS(phi(Theta, Theta, params, 1), DomainError);
  CHECK_THROWS_AS(torsion_forward({7000.0, 0.0, 0.0, 0.0, Theta, Theta}, params, 1), DomainError);
}
