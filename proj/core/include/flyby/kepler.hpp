#pragma once

#include <cmath>

#include "flyby/dual.hpp"
#include "flyby/types.hpp"

namespace flyby {

struct KeplerSolverConfig {
  // Residual bound on |e sinh u - u - ell| / max(1, |ell|).
  double tol = 1e-13;
  int max_iter = 50;
};

// Solves ell = e sinh(u) - u for the hyperbolic anomaly u.
//
// Newton iteration from u0 = asinh(ell/e), safeguarded by the bracket
// asinh(|ell|/e) <= |u| <= asinh(|ell|/(e-1)); a Newton step that leaves the
// bracket is replaced by bisection. Throws NotHyperbolicError for e <= 1 and
// ConvergenceError after max_iter iterations.
double solve_hyperbolic_kepler(double ell, double e, const KeplerSolverConfig& cfg = {});

// Residual used by the solver's stopping rule (evaluated in extended precision).
double kepler_residual(double ell, double e, double u);

// cos(f_inf) = -1/e, f_inf in (pi/2, pi).
double asymptote_anomaly(double e);

double true_from_hyperbolic(double u, double e);

// Throws DomainError when |f| >= f_inf.
double hyperbolic_from_true(double f, double e);

// n = -mu^2 / L^3 (> 0 since L < 0).
double mean_motion(const HyperbolicDelaunay& d, double mu);

// Pure two-body flow: only ell advances.
HyperbolicDelaunay kepler_propagate(const HyperbolicDelaunay& d, double dt, const PhysicalParams& params);

// Differentiable anomalies. The root is found on values; derivatives follow
// from implicit differentiation of the Kepler equation.
template <class T>
T hyperbolic_anomaly(const T& ell, const T& e, const KeplerSolverConfig& cfg = {}) {
  const double u0 = solve_hyperbolic_kepler(value_of(ell), value_of(e), cfg);
  const double den = value_of(e) * std::cosh(u0) - 1.0;
  return u0 + ((ell - value_of(ell)) - std::sinh(u0) * (e - value_of(e))) / den;
}

template <class T>
T true_anomaly_from_u(const T& u, const T& e, const T& eta) {
  using std::atan2;
  using std::cosh;
  using std::sinh;
  return atan2(eta * sinh(u), e - cosh(u));
}

}  // namespace flyby
