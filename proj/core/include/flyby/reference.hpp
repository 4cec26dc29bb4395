#pragma once

// Numerical ground truth: adaptive Runge-Kutta-Fehlberg 7(8) integration of
// the point-mass + J2 problem in Cartesian coordinates.

#include <functional>
#include <string>
#include <vector>

#include "flyby/trajectory.hpp"
#include "flyby/types.hpp"

namespace flyby {

struct IntegratorConfig {
  double rel_tol = 1e-15;
  double abs_tol = 1e-15;  // km and km/s
  double max_step = 0.0;   // s; 0 leaves the step unbounded
  // States are produced exactly at the grid times (the stepper lands on each
  // sample); kept for interface parity with dense-output integrators.
  bool dense_output = true;
  std::size_t max_steps = 5'000'000;
  // Carry the state in long double. Keeps roundoff in the step updates well
  // below the truncation error at the tightest tolerances.
  bool extended_precision = true;

  void validate() const;
};

struct ConservationReport {
  double energy_drift = 0.0;  // max |E - E0| / |E0|
  double n_drift = 0.0;       // max |N - N0| / |N0|
};

using AccelerationFn = std::function<Vec3(double t, const Vec3& r)>;

Vec3 point_mass_acceleration(const Vec3& r, double mu);
Vec3 main_problem_acceleration(const Vec3& r, const PhysicalParams& params);

// Integrates from cs0 (at cs0.epoch) to every time in t_grid. The grid must be
// monotone, in either direction away from the epoch. Throws IntegrationError
// when the stepper fails, reporting the last time reached.
Trajectory integrate(const CartesianState& cs0, const std::vector<double>& t_grid, const AccelerationFn& accel,
                     const IntegratorConfig& cfg, std::string label);

Trajectory integrate_main_problem(const CartesianState& cs0, const std::vector<double>& t_grid,
                                  const PhysicalParams& params, const IntegratorConfig& cfg = {});

Trajectory integrate_two_body(const CartesianState& cs0, const std::vector<double>& t_grid, double mu,
                              const IntegratorConfig& cfg = {});

ConservationReport conservation(const Trajectory& traj, const PhysicalParams& params);

// Per-sample position difference norm, km. Throws DomainError on grid mismatch.
std::vector<double> rss_error(const Trajectory& a, const Trajectory& b);

}  // namespace flyby
