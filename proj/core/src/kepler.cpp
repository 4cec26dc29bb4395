#include "flyby/kepler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flyby/errors.hpp"

namespace flyby {

double kepler_residual(double ell, double e, double u) {
  const long double ue = u;
  const long double r = static_cast<long double>(e) * std::sinh(ue) - ue - static_cast<long double>(ell);
  return static_cast<double>(std::fabs(r)) / std::max(1.0, std::fabs(ell));
}

double solve_hyperbolic_kepler(double ell, double e, const KeplerSolverConfig& cfg) {
  if (!(e > 1.0)) throw NotHyperbolicError("hyperbolic Kepler equation requires e > 1, got e = " + std::to_string(e));
  if (!std::isfinite(ell)) throw DomainError("mean anomaly must be finite");
  if (!(cfg.tol > 0.0) || cfg.max_iter < 1) throw DomainError("invalid Kepler solver configuration");
  if (ell == 0.0) return 0.0;

  // Solve on |ell| and restore the sign: the equation is odd in u.
  const double a = std::fabs(ell);
  const double sign = ell < 0.0 ? -1.0 : 1.0;
  double lo = std::asinh(a / e);
  double hi = std::asinh(a / (e - 1.0));
  double u = lo;
  double residual = kepler_residual(a, e, u);

  for (int it = 0; it < cfg.max_iter; ++it) {
    if (residual <= cfg.tol) return sign * u;
    const long double F = static_cast<long double>(e) * std::sinh(static_cast<long double>(u)) - u - a;
    if (F < 0) lo = u; else hi = u;
    const double dF = e * std::cosh(u) - 1.0;
    double next = u - static_cast<double>(F) / dF;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == u) break;
    u = next;
    residual = kepler_residual(a, e, u);
  }
  if (residual <= cfg.tol) return sign * u;
  throw ConvergenceError("hyperbolic Kepler solver did not converge", residual);
}

double asymptote_anomaly(double e) {
  if (!(e > 1.0)) throw NotHyperbolicError("asymptote anomaly requires e > 1");
  return std::acos(-1.0 / e);
}

double true_from_hyperbolic(double u, double e) {
  if (!(e > 1.0)) throw NotHyperbolicError("true anomaly conversion requires e > 1");
  const double eta = std::sqrt((e - 1.0) * (e + 1.0));
  return true_anomaly_from_u(u, e, eta);
}

double hyperbolic_from_true(double f, double e) {
  if (!(e > 1.0)) throw NotHyperbolicError("hyperbolic anomaly conversion requires e > 1");
  const double f_inf = asymptote_anomaly(e);
  const double den = 1.0 + e * std::cos(f);
  if (!(std::fabs(f) < f_inf) || !(den > 0.0)) {
    throw DomainError("true anomaly " + std::to_string(f) + " lies beyond the asymptote anomaly " +
                      std::to_string(f_inf));
  }
  const double eta = std::sqrt((e - 1.0) * (e + 1.0));
  return std::asinh(eta * std::sin(f) / den);
}

double mean_motion(const HyperbolicDelaunay& d, double mu) { return -mu * mu / (d.L * d.L * d.L); }

HyperbolicDelaunay kepler_propagate(const HyperbolicDelaunay& d, double dt, const PhysicalParams& params) {
  params.validate();
  validate(d);
  HyperbolicDelaunay out = d;
  out.ell += mean_motion(d, params.mu) * dt;
  return out;
}

}  // namespace flyby
