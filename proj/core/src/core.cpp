#include "flyby/core.hpp"

#include <cmath>
#include <string>

namespace flyby {

namespace {

bool all_finite(const Vec3& v) { return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]); }

// Relative size below which the equatorial projection of the angular momentum
// is treated as zero.
constexpr double kNodeTolerance = 1e-15;

}  // namespace

void PhysicalParams::validate() const {
  if (!(mu > 0.0)) throw DomainError("gravitational parameter must be positive");
  if (!(alpha > 0.0)) throw DomainError("equatorial radius must be positive");
  if (!(j2 >= 0.0) || !std::isfinite(j2)) throw DomainError("J2 must be finite and non-negative");
}

void validate(const PolarState& ps) {
  if (!std::isfinite(ps.r) || !std::isfinite(ps.theta) || !std::isfinite(ps.nu) || !std::isfinite(ps.R) ||
      !std::isfinite(ps.Theta) || !std::isfinite(ps.N)) {
    throw DomainError("polar state has non-finite components");
  }
  if (!(ps.r > 0.0)) throw DomainError("polar state requires r > 0");
  if (!(ps.Theta > 0.0)) throw DomainError("polar state requires Theta > 0");
  if (std::fabs(ps.N) > ps.Theta) throw DomainError("polar state requires |N| <= Theta");
}

void validate(const HyperbolicDelaunay& d) {
  if (!std::isfinite(d.ell) || !std::isfinite(d.g) || !std::isfinite(d.h) || !std::isfinite(d.L) ||
      !std::isfinite(d.G) || !std::isfinite(d.H)) {
    throw DomainError("Delaunay set has non-finite components");
  }
  if (!(d.G > 0.0)) throw DomainError("Delaunay set requires G > 0");
  if (std::fabs(d.H) > d.G) throw DomainError("Delaunay set requires |H| <= G");
  if (!(d.L < 0.0)) throw DomainError("hyperbolic Delaunay action L must be negative");
}

void validate(const CartesianState& cs) {
  if (!all_finite(cs.position) || !all_finite(cs.velocity) || !std::isfinite(cs.epoch)) {
    throw DomainError("Cartesian state has non-finite components");
  }
  if (!(norm(cs.position) > 0.0)) throw DomainError("Cartesian state at the origin");
}

HyperbolicDelaunay delaunay_from_elements(const HyperbolicElements& el, const PhysicalParams& params) {
  params.validate();
  if (!(el.e > 1.0)) throw NotHyperbolicError("hyperbolic regime required: e = " + std::to_string(el.e));
  if (!(el.a > 0.0)) throw DomainError("semi-transverse axis must be positive");
  const double absL = std::sqrt(params.mu * el.a);
  HyperbolicDelaunay d;
  d.ell = el.M;
  d.g = el.argp;
  d.h = el.raan;
  d.L = -absL;
  d.G = absL * std::sqrt((el.e - 1.0) * (el.e + 1.0));
  d.H = d.G * std::cos(el.i);
  return d;
}

CartesianState polar_to_cartesian(const PolarState& ps, double epoch) {
  validate(ps);
  const double c = ps.N / ps.Theta;
  const double s = std::sqrt((ps.Theta - ps.N) * (ps.Theta + ps.N)) / ps.Theta;
  const double cn = std::cos(ps.nu), sn = std::sin(ps.nu);
  const double ct = std::cos(ps.theta), st = std::sin(ps.theta);

  const Vec3 radial{cn * ct - sn * st * c, sn * ct + cn * st * c, st * s};
  const Vec3 transverse{-cn * st - sn * ct * c, -sn * st + cn * ct * c, ct * s};

  CartesianState cs;
  cs.position = ps.r * radial;
  cs.velocity = ps.R * radial + (ps.Theta / ps.r) * transverse;
  cs.epoch = epoch;
  return cs;
}

bool node_is_undefined(const CartesianState& cs) {
  const Vec3 h = cross(cs.position, cs.velocity);
  return std::hypot(h[0], h[1]) <= kNodeTolerance * norm(h);
}

namespace {

PolarState polar_with_node(const CartesianState& cs, const Vec3& h, double Theta, double nu) {
  const Vec3 n{std::cos(nu), std::sin(nu), 0.0};
  const Vec3 m = cross((1.0 / Theta) * h, n);
  PolarState ps;
  ps.r = norm(cs.position);
  ps.theta = std::atan2(dot(cs.position, m), dot(cs.position, n));
  ps.nu = nu;
  ps.R = dot(cs.position, cs.velocity) / ps.r;
  ps.Theta = Theta;
  ps.N = h[2];
  return ps;
}

}  // namespace

PolarState cartesian_to_polar(const CartesianState& cs) {
  validate(cs);
  const Vec3 h = cross(cs.position, cs.velocity);
  const double Theta = norm(h);
  if (!(Theta > 0.0)) throw DomainError("zero angular momentum: polar chart is singular");
  if (std::hypot(h[0], h[1]) <= kNodeTolerance * Theta) {
    throw NodeUndefinedError("angular momentum along the polar axis: node longitude undefined");
  }
  return polar_with_node(cs, h, Theta, std::atan2(h[0], -h[1]));
}

PolarState cartesian_to_polar(const CartesianState& cs, double equatorial_node) {
  validate(cs);
  const Vec3 h = cross(cs.position, cs.velocity);
  const double Theta = norm(h);
  if (!(Theta > 0.0)) throw DomainError("zero angular momentum: polar chart is singular");
  if (std::hypot(h[0], h[1]) <= kNodeTolerance * Theta) {
    PolarState ps = polar_with_node(cs, h, Theta, equatorial_node);
    ps.N = h[2] > 0.0 ? Theta : -Theta;
    return ps;
  }
  return polar_with_node(cs, h, Theta, std::atan2(h[0], -h[1]));
}

PolarState to_polar(const HyperbolicDelaunay& d, const PhysicalParams& params) {
  params.validate();
  validate(d);
  return polar_from_delaunay(d, params.mu);
}

HyperbolicDelaunay to_delaunay(const PolarState& ps, const PhysicalParams& params) {
  params.validate();
  validate(ps);
  return delaunay_from_polar(ps, params.mu);
}

DerivedGeometry derive_geometry(const PolarState& ps, const PhysicalParams& params) {
  params.validate();
  validate(ps);
  DerivedGeometry g;
  g.p = ps.Theta * ps.Theta / params.mu;
  g.sigma = g.p * ps.R / ps.Theta;
  g.kappa = g.p / ps.r - 1.0;
  g.e = std::hypot(g.sigma, g.kappa);
  if (!(g.e > 1.0)) throw NotHyperbolicError("hyperbolic regime required: e = " + std::to_string(g.e));
  g.eta = std::sqrt((g.e - 1.0) * (g.e + 1.0));
  g.c = ps.N / ps.Theta;
  g.s = std::sqrt((ps.Theta - ps.N) * (ps.Theta + ps.N)) / ps.Theta;
  g.f = std::atan2(g.sigma, g.kappa);
  if (!(std::fabs(g.f) < asymptote_anomaly(g.e))) throw DomainError("true anomaly beyond the asymptote");
  g.u = std::asinh(g.eta * g.sigma * ps.r / (g.e * g.p));
  const double k = ps.Theta / g.p;
  g.C = k * (g.kappa * std::cos(ps.theta) + g.sigma * std::sin(ps.theta));
  g.S = k * (g.kappa * std::sin(ps.theta) - g.sigma * std::cos(ps.theta));
  return g;
}

DerivedGeometry derive_geometry(const HyperbolicDelaunay& d, const PhysicalParams& params) {
  params.validate();
  validate(d);
  DerivedGeometry g;
  g.eta = -d.G / d.L;
  g.e = std::sqrt(1.0 + g.eta * g.eta);
  g.p = d.G * d.G / params.mu;
  g.c = d.H / d.G;
  g.s = std::sqrt((d.G - d.H) * (d.G + d.H)) / d.G;
  g.u = solve_hyperbolic_kepler(d.ell, g.e);
  g.f = true_anomaly_from_u(g.u, g.e, g.eta);
  g.sigma = g.e * std::sin(g.f);
  g.kappa = g.e * std::cos(g.f);
  const double k = d.G / g.p * g.e;
  g.C = k * std::cos(d.g);
  g.S = k * std::sin(d.g);
  return g;
}

double cartesian_energy(const CartesianState& cs, const PhysicalParams& params) {
  const double r = norm(cs.position);
  const double z = cs.position[2];
  const double a2 = params.alpha * params.alpha;
  return 0.5 * dot(cs.velocity, cs.velocity) - params.mu / r +
         0.5 * params.mu * params.j2 * a2 / (r * r * r) * (3.0 * z * z / (r * r) - 1.0);
}

double polar_angular_momentum(const CartesianState& cs) {
  return cs.position[0] * cs.velocity[1] - cs.position[1] * cs.velocity[0];
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

}  // namespace flyby
