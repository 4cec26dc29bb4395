#pragma once

// Torsion of (theta, nu, Theta, N) that turns the quasi-Keplerian radial
// intermediary into a pure Kepler problem. r, R and N pass through unchanged.
//
// With eps = -J2/2 (alpha/p)^2 and c = N/Theta the torsion factor is
//   Phi^2 = 1 + eps (3c^2 - 1)                      (order 1)
//   Phi^2 = 1 + eps (3c^2 - 1) + eps^2 (1 - 21c^4)/4  (order 2)
// so that Theta* = Theta Phi reproduces the modified angular momentum of the
// intermediary.

#include "flyby/types.hpp"

namespace flyby {

struct TorsionContext {
  double epsilon = 0.0;  // <= 0
  double cinc = 0.0;     // N/Theta (prime) or N/Theta* (asterisk); may exceed 1
  int order = 1;

  double phi2() const;
  double dphi2_deps() const;
  double dphi2_dc() const;
};

TorsionContext torsion_context(double Theta, double N, const PhysicalParams& params, int order);

// Throws DomainError for a non-positive radicand.
double phi(double Theta, double N, const PhysicalParams& params, int order);

PolarState torsion_forward(const PolarState& prime, const PhysicalParams& params, int order);

// Solves Theta Phi(Theta, N) = Theta* on a bracket of half-width ~4|eps| Theta*
// (at most Theta*/2, never below |N|), then the theta and nu equations.
// Throws ConvergenceError when the bracket holds no root.
PolarState torsion_inverse_rootfind(const PolarState& star, const PhysicalParams& params, int order);

// Truncated series in eps for Theta(Theta*, N), with c and p taken from the
// asterisk variables.
PolarState torsion_inverse_series(const PolarState& star, const PhysicalParams& params, int order);

// Angular-momentum part of the series inverse alone.
double torsion_series_theta(double Theta_star, double N, const PhysicalParams& params, int order);

// True when the Keplerian image has N/Theta* > 1 (complex inclination). The
// torsion itself stays valid.
bool torsion_degenerate(const PolarState& star);

}  // namespace flyby
