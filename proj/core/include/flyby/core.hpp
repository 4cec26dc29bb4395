#pragma once

// Variable sets, chart conversions and the main-problem Hamiltonian.

#include <cmath>

#include "flyby/dual.hpp"
#include "flyby/errors.hpp"
#include "flyby/kepler.hpp"
#include "flyby/types.hpp"

namespace flyby {

// Classical elements of a hyperbolic conic; angles in radians.
struct HyperbolicElements {
  double a = 0.0;  // semi-transverse axis, km (> 0)
  double e = 0.0;  // > 1
  double i = 0.0;
  double raan = 0.0;
  double argp = 0.0;
  double M = 0.0;  // mean anomaly, unbounded
};

HyperbolicDelaunay delaunay_from_elements(const HyperbolicElements& el, const PhysicalParams& params);

CartesianState polar_to_cartesian(const PolarState& ps, double epoch = 0.0);

// Throws NodeUndefinedError when the angular momentum lies on the polar axis.
PolarState cartesian_to_polar(const CartesianState& cs);

// Same chart, except that an equatorial state (angular momentum on the polar
// axis) is expressed with the caller-supplied node longitude instead of
// raising. Non-equatorial states ignore `equatorial_node`.
PolarState cartesian_to_polar(const CartesianState& cs, double equatorial_node);

bool node_is_undefined(const CartesianState& cs);

// Delaunay -> polar: theta = f + g, nu = h, r = p/(1 + e cos f),
// R = (mu/G) e sin f, Theta = G, N = H.
template <class T>
BasicPolar<T> polar_from_delaunay(const BasicDelaunay<T>& d, double mu) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const T eta = -d.G / d.L;
  const T e = sqrt(1.0 + eta * eta);
  const T p = d.G * d.G / mu;
  const T u = hyperbolic_anomaly(d.ell, e);
  const T f = true_anomaly_from_u(u, e, eta);
  BasicPolar<T> ps;
  ps.r = p / (1.0 + e * cos(f));
  ps.theta = f + d.g;
  ps.nu = d.h;
  ps.R = mu / d.G * e * sin(f);
  ps.Theta = d.G;
  ps.N = d.H;
  return ps;
}

// Polar -> Delaunay. g = theta - f is not wrapped, so theta stays continuous
// through a round trip. Throws NotHyperbolicError when e <= 1.
template <class T>
BasicDelaunay<T> delaunay_from_polar(const BasicPolar<T>& ps, double mu) {
  using std::asinh;
  using std::atan2;
  using std::sinh;
  using std::sqrt;
  const T p = ps.Theta * ps.Theta / mu;
  const T sigma = p * ps.R / ps.Theta;
  const T p_over_r = p / ps.r;
  const T kappa = p_over_r - 1.0;
  const T e2 = sigma * sigma + kappa * kappa;
  if (!(value_of(e2) > 1.0)) throw NotHyperbolicError("hyperbolic regime required: e <= 1");
  const T e = sqrt(e2);
  const T eta = sqrt(e2 - 1.0);
  const T f = atan2(sigma, kappa);
  // sinh u = eta sin f / (1 + e cos f), with 1 + e cos f = p/r.
  const T u = asinh(eta * sigma / (e * p_over_r));
  BasicDelaunay<T> d;
  d.ell = e * sinh(u) - u;
  d.g = ps.theta - f;
  d.h = ps.nu;
  d.G = ps.Theta;
  d.L = -ps.Theta / eta;
  d.H = ps.N;
  return d;
}

PolarState to_polar(const HyperbolicDelaunay& d, const PhysicalParams& params);
HyperbolicDelaunay to_delaunay(const PolarState& ps, const PhysicalParams& params);

DerivedGeometry derive_geometry(const PolarState& ps, const PhysicalParams& params);
DerivedGeometry derive_geometry(const HyperbolicDelaunay& d, const PhysicalParams& params);

// Main-problem Hamiltonian pieces in polar variables:
//   M = kepler + J2 * j2_term.
template <class T>
T kepler_hamiltonian(const BasicPolar<T>& ps, double mu) {
  return 0.5 * (ps.R * ps.R + ps.Theta * ps.Theta / (ps.r * ps.r)) - mu / ps.r;
}

template <class T>
T main_problem_j2_term(const BasicPolar<T>& ps, const PhysicalParams& params) {
  using std::cos;
  const T c = ps.N / ps.Theta;
  const T s2 = 1.0 - c * c;
  const T a2r2 = params.alpha * params.alpha / (ps.r * ps.r);
  return -0.25 * params.mu / ps.r * a2r2 * (2.0 - 3.0 * s2 + 3.0 * s2 * cos(2.0 * ps.theta));
}

template <class T>
T main_problem_hamiltonian(const BasicPolar<T>& ps, const PhysicalParams& params) {
  return kepler_hamiltonian(ps, params.mu) + params.j2 * main_problem_j2_term(ps, params);
}

// Kinetic plus point-mass and J2-zonal potential energy of a Cartesian state.
double cartesian_energy(const CartesianState& cs, const PhysicalParams& params);

// Polar component of the specific angular momentum.
double polar_angular_momentum(const CartesianState& cs);

// Wraps an angle difference into (-pi, pi].
double wrap_angle(double a);

}  // namespace flyby
