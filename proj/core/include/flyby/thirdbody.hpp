#pragma once

// Third-body perturbation: Legendre-expanded disturbing potential and
// numerical propagation with either the exact or the P2-truncated force.
//
// Potentials follow the Hamiltonian sign convention,
//   M_B = -(mu_B/r_B) sum_{j>=2} (r/r_B)^j P_j(cos psi),
// where psi is the angle between the satellite and perturber directions.

#include <functional>
#include <vector>

#include "flyby/reference.hpp"
#include "flyby/trajectory.hpp"
#include "flyby/types.hpp"

namespace flyby {

using PerturberProvider = std::function<Vec3(double t)>;

struct ThirdBodyConfig {
  double mu_b = 0.0;  // km^3/s^2
  PerturberProvider r_b;
  int jmax = 2;

  void validate() const;
};

// Perturber on a circle of the given radius in the x-y plane, angular rate
// `rate` (rad/s) and phase `phase0` (rad) at t = 0.
PerturberProvider circular_perturber(double radius, double rate, double phase0);

double legendre_p(int j, double x);
// P_0 .. P_jmax by the Bonnet recurrence.
std::vector<double> legendre_table(int jmax, double x);

// Partial sum j = 2..jmax. Throws DomainError when r >= r_b.
double legendre_potential(double r, double r_b, double cos_psi, int jmax, double mu_b);

// Closed form of the same potential: -mu_B (1/|r - r_B| - r.r_B / r_B^3).
double exact_third_body_potential(const Vec3& r, const Vec3& r_b, double mu_b);

Vec3 exact_third_body_acceleration(const Vec3& r, const Vec3& r_b, double mu_b);
Vec3 p2_third_body_acceleration(const Vec3& r, const Vec3& r_b, double mu_b);

enum class ThirdBodyMode { exact, p2_only };

// Main-problem dynamics of `params` plus the selected third-body force. Aborts
// with IntegrationError (carrying the exit time) if r >= r_B.
Trajectory integrate_third_body(const CartesianState& cs0, const std::vector<double>& t_grid,
                                const PhysicalParams& params, const ThirdBodyConfig& tb, ThirdBodyMode mode,
                                const IntegratorConfig& cfg = {});

}  // namespace flyby
