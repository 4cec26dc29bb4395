#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace flyby {

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline constexpr double kPi = std::numbers::pi;
inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Gravitational field of the central body. j2 == 0 selects pure Kepler dynamics.
struct PhysicalParams {
  double mu = 0.0;     // km^3/s^2
  double alpha = 0.0;  // equatorial radius, km
  double j2 = 0.0;

  void validate() const;

  static PhysicalParams earth() { return {398600.44, 6378.1363, 0.001082634}; }
  static PhysicalParams jupiter() { return {1.268e8, 71492.0, 0.01475}; }
};

// Canonical polar variables. theta is the argument of latitude and nu the
// node longitude; (R, Theta, N) are their conjugate momenta.
template <class T>
struct BasicPolar {
  T r{}, theta{}, nu{}, R{}, Theta{}, N{};
};
using PolarState = BasicPolar<double>;

void validate(const PolarState& ps);

// Hyperbolic Delaunay variables. L is stored negative: eta = -G/L > 0 and the
// mean motion n = -mu^2/L^3 > 0.
template <class T>
struct BasicDelaunay {
  T ell{}, g{}, h{}, L{}, G{}, H{};
};
using HyperbolicDelaunay = BasicDelaunay<double>;

void validate(const HyperbolicDelaunay& d);

// Non-canonical quantities shared by the correction series.
struct DerivedGeometry {
  double e = 0.0;      // eccentricity (> 1)
  double eta = 0.0;    // sqrt(e^2 - 1)
  double p = 0.0;      // conic parameter, km
  double s = 0.0;      // sine of inclination
  double c = 0.0;      // cosine of inclination
  double sigma = 0.0;  // e sin f
  double kappa = 0.0;  // e cos f
  double f = 0.0;      // true anomaly, rad
  double u = 0.0;      // hyperbolic anomaly, rad
  double C = 0.0;      // (Theta/p) e cos g
  double S = 0.0;      // (Theta/p) e sin g
};

struct CartesianState {
  Vec3 position{};  // km
  Vec3 velocity{};  // km/s
  double epoch = 0.0;  // s
};

void validate(const CartesianState& cs);

}  // namespace flyby
