#pragma once

// Elimination of the parallax for hyperbolic orbits: generating functions,
// first-order closed-form corrections, Poisson brackets in Delaunay variables,
// and the mean <-> osculating maps in polar variables.
//
// Boundary conditions are imposed on the incoming asymptote (f -> -f_inf);
// there every first-order correction vanishes.

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "flyby/core.hpp"
#include "flyby/dual.hpp"
#include "flyby/inclination_tables.hpp"
#include "flyby/types.hpp"

namespace flyby {

// Small-eta policy for the correction series.
inline constexpr double kEtaHardLimit = 1e-3;
inline constexpr double kEtaWarnLimit = 0.05;

enum class EtaStatus { ok, warn };

// Throws DomainError below kEtaHardLimit.
EtaStatus classify_eta(double eta);

// Index of each Delaunay variable in gradients and Jacobian columns.
enum DelaunayIndex : std::size_t { kEll = 0, kArgp = 1, kNode = 2, kL = 3, kG = 4, kH = 5 };

enum class PolarComponent { r = 0, theta = 1, nu = 2, R = 3, Theta = 4, N = 5 };

using Dual6 = Dual<6>;
using Gradient = std::array<double, 6>;
// Row per polar variable (r, theta, nu, R, Theta, N), column per Delaunay variable.
using PolarJacobian = std::array<Gradient, 6>;

struct CorrectionVector {
  double dr = 0.0;
  double dtheta = 0.0;
  double dnu = 0.0;
  double dR = 0.0;
  double dTheta = 0.0;
  double dN = 0.0;  // N is an integral: always zero
  int order = 1;

  double operator[](PolarComponent c) const;
};

namespace detail {

template <class T>
struct SeriesArgs {
  T e, eta, p, s2, c, f, g, G, a2p2;
};

template <class T>
SeriesArgs<T> series_args(const BasicDelaunay<T>& d, const PhysicalParams& params) {
  using std::sqrt;
  SeriesArgs<T> a;
  a.eta = -d.G / d.L;
  a.e = sqrt(1.0 + a.eta * a.eta);
  a.p = d.G * d.G / params.mu;
  a.c = d.H / d.G;
  a.s2 = 1.0 - a.c * a.c;
  a.f = true_anomaly_from_u(hyperbolic_anomaly(d.ell, a.e), a.e, a.eta);
  a.g = d.g;
  a.G = d.G;
  a.a2p2 = params.alpha * params.alpha / (a.p * a.p);
  return a;
}

}  // namespace detail

// Integration constant of U1 fixed by the asymptotic boundary conditions.
template <class T>
T c0_value(const BasicDelaunay<T>& d, const PhysicalParams& params) {
  using std::cos;
  using std::sin;
  const auto a = detail::series_args(d, params);
  const T eta3 = a.eta * a.eta * a.eta;
  const T e2 = a.e * a.e;
  return a.G * 0.25 * a.a2p2 *
         ((3.0 * a.s2 - 2.0) * a.eta -
          a.s2 / e2 * (eta3 * cos(2.0 * a.g) + 0.5 * (3.0 * e2 - 2.0) * sin(2.0 * a.g)));
}

// Same constant written with Deprit's C, S functions of the polar state.
double c0_value_polar(const PolarState& ps, const PhysicalParams& params);

template <class T>
T u1_value(const BasicDelaunay<T>& d, const PhysicalParams& params) {
  using std::sin;
  const auto a = detail::series_args(d, params);
  const T two_g = 2.0 * a.g;
  const T periodic = a.s2 * (3.0 * a.e * sin(a.f + two_g) + 3.0 * sin(2.0 * a.f + two_g) +
                             a.e * sin(3.0 * a.f + two_g)) -
                     (6.0 * a.s2 - 4.0) * a.e * sin(a.f);
  return -a.G * 0.125 * a.a2p2 * periodic + c0_value(d, params);
}

double u1_value_polar(const PolarState& ps, const PhysicalParams& params);

// Non-periodic factor of U2: pi - f + arctan(eta), taken on the branch that
// vanishes on the incoming asymptote (f = -f_inf), i.e. -(f + f_inf). The
// 2 pi shift is an admissible integration constant; this branch makes every
// second-order correction vanish where the first-order ones do.
template <class T>
T psi_function(const T& f, const T& eta) {
  using std::atan;
  return atan(eta) - kPi - f;
}

template <class T>
T u2_value(const BasicDelaunay<T>& d, const PhysicalParams& params) {
  using std::atan;
  using std::cos;
  using std::sin;
  const auto a = detail::series_args(d, params);
  const auto& tables = InclinationTables::instance();
  const T e2 = a.e * a.e;
  const T e4 = e2 * e2;
  const T eta3 = a.eta * a.eta * a.eta;
  const T s2 = a.s2;
  const T a4p4 = a.a2p2 * a.a2p2;
  const T psi = psi_function(a.f, a.eta);

  const T secular = ((2.0 * e4 * (15.0 * s2 - 14.0) + 8.0 * (3.0 * e2 - 2.0) * (5.0 * s2 - 4.0)) * s2 *
                         cos(2.0 * a.g) -
                     16.0 * eta3 * (5.0 * s2 - 4.0) * s2 * sin(2.0 * a.g) -
                     e4 * (5.0 * s2 * s2 + 8.0 * s2 - 8.0)) *
                    psi;

  std::array<T, 8> epow;
  epow[0] = T(1.0);
  for (std::size_t n = 1; n < epow.size(); ++n) epow[n] = epow[n - 1] * a.e;

  T periodic(0.0);
  T s2k(1.0);
  for (int k = 0; k <= 2; ++k) {
    const int j0 = -2 * (k % 2) - 1;
    const int j1 = 6 - 2 * (k % 2);
    T cos_sum(0.0), sin_sum(0.0);
    // Cosine terms run over j0..5, sine terms over j0..j1.
    for (int j = j0; j <= std::max(5, j1); ++j) {
      const int jm = ((j % 2) + 2) % 2;
      const T arg = static_cast<double>(j) * a.f + static_cast<double>(2 * k) * a.g;
      if (j <= 5) {
        T acc(0.0);
        for (int i = 0; i <= 3; ++i) {
          const auto& poly = tables.q(k, i, j);
          if (!poly.is_zero()) acc = acc + poly(s2) * epow[2 * i + 1 - jm];
        }
        cos_sum = cos_sum + acc * cos(arg);
      }
      if (j <= j1) {
        T acc(0.0);
        for (int i = 0; i <= 2; ++i) {
          const auto& poly = tables.p(k, i, j);
          if (!poly.is_zero()) acc = acc + poly(s2) * epow[2 * i + 1 - jm];
        }
        sin_sum = sin_sum + acc * sin(arg);
      }
    }
    periodic = periodic + s2k * (cos_sum + a.eta * sin_sum);
    s2k = s2k * s2;
  }

  return a.G * a4p4 * (3.0 / 64.0) / e2 * secular + a.G * a4p4 / (256.0 * e2 * a.e * a.eta) * periodic;
}

// Integration constants of U2 in factored form; their sum equals the
// f-free part of u2_value with psi replaced by pi + arctan(eta).
double q_constants(const HyperbolicDelaunay& d, const PhysicalParams& params);

// The five closed-form first-order corrections (r, theta, nu, R, Theta) = {xi, U1}.
template <class T>
std::array<T, 5> first_order_series(const BasicDelaunay<T>& d, const PhysicalParams& params) {
  using std::cos;
  using std::sin;
  const auto a = detail::series_args(d, params);
  const T e = a.e, eta = a.eta, s2 = a.s2, f = a.f, g = a.g;
  const T e2 = e * e, e3 = e2 * e, e4 = e2 * e2, e5 = e4 * e;
  const T eta3 = eta * eta * eta;
  const T tg = 2.0 * g;

  const T r01 = a.p * 0.25 * a.a2p2 *
                ((3.0 * s2 - 2.0) * (1.0 + e / eta * sin(f)) +
                 s2 / (2.0 * e3) *
                     ((e2 - 4.0) * eta * sin(f - tg) - 3.0 * e2 * eta * sin(f + tg) +
                      (3.0 * e2 - 4.0) * cos(f - tg) + 3.0 * e2 * cos(f + tg) + 2.0 * e3 * cos(2.0 * f + tg)));

  const T th_a = (6.0 * (2.0 * (5.0 * s2 - 4.0) - (7.0 * s2 - 6.0) * e2) + 8.0 * e * (3.0 * s2 - 2.0) * cos(f) +
                  2.0 * e2 * (3.0 * s2 - 2.0) * cos(2.0 * f)) /
                 eta;
  const T th_b = eta / e3 *
                 ((e2 - 4.0) * e * s2 * cos(2.0 * f - tg) + 4.0 * (e2 - 4.0) * s2 * cos(f - tg) +
                  2.0 * e * (e2 * (7.0 * s2 - 4.0) - 4.0 * (4.0 * s2 - 1.0)) * cos(tg) -
                  12.0 * e2 * s2 * cos(f + tg) - 3.0 * e3 * s2 * cos(2.0 * f + tg));
  const T th_c = ((4.0 - 3.0 * e2) * e * s2 * sin(2.0 * f - tg) - 4.0 * (3.0 * e2 - 4.0) * s2 * sin(f - tg) +
                  2.0 * e * (3.0 * e2 * (5.0 * s2 - 2.0) - 4.0 * (4.0 * s2 - 1.0)) * sin(tg) -
                  8.0 * e4 * (6.0 * s2 - 5.0) * sin(f) +
                  4.0 * e2 * (e2 * (5.0 * s2 - 3.0) - 3.0 * s2) * sin(f + tg) +
                  e3 * (11.0 * s2 - 12.0) * sin(2.0 * f + tg) + 4.0 * e4 * (s2 - 1.0) * sin(3.0 * f + tg)) /
                 e3;
  const T theta01 = (1.0 / 16.0) * a.a2p2 * (th_a + th_b + th_c);

  const T nu01 = a.c * 0.25 * a.a2p2 *
                 (((3.0 * e2 - 2.0) * sin(tg) + 2.0 * eta3 * cos(tg)) / e2 - 6.0 * (eta + e * sin(f)) +
                  3.0 * e * sin(f + tg) + 3.0 * sin(2.0 * f + tg) + e * sin(3.0 * f + tg));

  const T R_a = e / eta * (3.0 * s2 - 2.0) *
                (2.0 * e2 * cos(3.0 * f) + 8.0 * e * cos(2.0 * f) + (6.0 * e2 + 8.0) * cos(f) + 8.0 * e);
  const T R_b = eta * s2 / e3 *
                ((e2 - 4.0) * e2 * cos(3.0 * f - tg) + 4.0 * (e2 - 4.0) * e * cos(2.0 * f - tg) -
                 (e4 + 4.0 * e2 + 16.0) * cos(f - tg) - 8.0 * (e2 + 2.0) * e * cos(tg) -
                 (5.0 * e2 + 16.0) * e2 * cos(f + tg) - 12.0 * e3 * cos(2.0 * f + tg) -
                 3.0 * e4 * cos(3.0 * f + tg));
  const T R_c = s2 / e3 *
                ((3.0 * e2 - 4.0) * e2 * sin(3.0 * f - tg) + 4.0 * (3.0 * e2 - 4.0) * e * sin(2.0 * f - tg) +
                 (3.0 * e4 + 4.0 * e2 - 16.0) * sin(f - tg) + 4.0 * (e4 + 4.0) * e * sin(tg) +
                 (19.0 * e2 + 16.0) * e2 * sin(f + tg) + 4.0 * (2.0 * e2 + 7.0) * e3 * sin(2.0 * f + tg) +
                 19.0 * e4 * sin(3.0 * f + tg) + 4.0 * e5 * sin(4.0 * f + tg));
  const T R01 = a.G / a.p * (1.0 / 32.0) * a.a2p2 * (R_a + R_b - R_c);

  const T Theta01 = a.G * 0.25 * a.a2p2 * s2 *
                    (((3.0 * e2 - 2.0) * cos(tg) - 2.0 * eta3 * sin(tg)) / e2 + 3.0 * e * cos(f + tg) +
                     3.0 * cos(2.0 * f + tg) + e * cos(3.0 * f + tg));

  return {r01, theta01, nu01, R01, Theta01};
}

// Value and gradient (in DelaunayIndex order) of a scalar function of the
// Delaunay set, by forward-mode differentiation.
template <class F>
std::pair<double, Gradient> value_and_gradient(F&& fn, const HyperbolicDelaunay& d) {
  BasicDelaunay<Dual6> x;
  x.ell = Dual6::variable(d.ell, kEll);
  x.g = Dual6::variable(d.g, kArgp);
  x.h = Dual6::variable(d.h, kNode);
  x.L = Dual6::variable(d.L, kL);
  x.G = Dual6::variable(d.G, kG);
  x.H = Dual6::variable(d.H, kH);
  const Dual6 y = fn(x);
  return {y.v, y.d};
}

// {F, G} = sum over (ell,L), (g,G), (h,H) of dF/dq dG/dp - dF/dp dG/dq.
double poisson_bracket(const Gradient& dF, const Gradient& dG);

// Partials of the polar variables with respect to the hyperbolic Delaunay
// variables, in closed form (theta, r, R rows; Theta = G; nu = h; N = H).
PolarJacobian polar_jacobian(const HyperbolicDelaunay& d, const PhysicalParams& params);

enum class Generator { u1, u2 };

Gradient generator_gradient(Generator which, const HyperbolicDelaunay& d, const PhysicalParams& params);

// {xi, U} for a polar variable xi.
double poisson_bracket(PolarComponent xi, Generator which, const HyperbolicDelaunay& d,
                       const PhysicalParams& params);

CorrectionVector first_order_corrections(const HyperbolicDelaunay& d, const PhysicalParams& params);

// Pieces of the second-order correction: iterated = {xi01, U1},
// direct = {xi, U2}; xi02 = iterated + direct.
struct SecondOrderParts {
  CorrectionVector iterated;
  CorrectionVector direct;
};

SecondOrderParts second_order_parts(const HyperbolicDelaunay& d, const PhysicalParams& params);
CorrectionVector second_order_corrections(const HyperbolicDelaunay& d, const PhysicalParams& params);

// xi = xi' + J2 xi01 + (order 2) J2^2/2 xi02, all evaluated at the input.
PolarState mean_to_osculating(const PolarState& mean, int order, const PhysicalParams& params);

// Inverse Lie series: xi' = xi - J2 xi01 + (order 2) J2^2/2 ({xi01,U1} - {xi,U2}),
// evaluated at the osculating input.
PolarState osculating_to_mean(const PolarState& osc, int order, const PhysicalParams& params);

}  // namespace flyby
