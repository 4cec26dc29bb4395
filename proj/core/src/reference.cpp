#include "flyby/reference.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <string>

#include "flyby/core.hpp"
#include "flyby/errors.hpp"

namespace flyby {

namespace odeint = boost::numeric::odeint;

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("integrator tolerances must be positive");
  if (!(max_step >= 0.0)) throw DomainError("max_step must be non-negative");
  if (max_steps == 0) throw DomainError("max_steps must be positive");
}

Vec3 point_mass_acceleration(const Vec3& r, double mu) {
  const double rn = norm(r);
  return (-mu / (rn * rn * rn)) * r;
}

Vec3 main_problem_acceleration(const Vec3& r, const PhysicalParams& params) {
  const double r2 = dot(r, r);
  const double rn = std::sqrt(r2);
  const double k = -params.mu / (r2 * rn);
  const double q = 1.5 * params.j2 * params.alpha * params.alpha / r2;
  const double z2 = r[2] * r[2] / r2;
  const double xy = 1.0 + q * (1.0 - 5.0 * z2);
  return {k * r[0] * xy, k * r[1] * xy, k * r[2] * (1.0 + q * (3.0 - 5.0 * z2))};
}

namespace {

// Integrates over `times` (epoch first) and returns one state per entry. The
// state vector is carried in Real; accelerations are evaluated in double.
template <class Real>
std::vector<CartesianState> run_stepper(const CartesianState& cs0, const std::vector<double>& times,
                                        const AccelerationFn& accel, const IntegratorConfig& cfg, bool forward) {
  using State = std::array<Real, 6>;
  State x{cs0.position[0], cs0.position[1], cs0.position[2], cs0.velocity[0], cs0.velocity[1], cs0.velocity[2]};
  auto rhs = [&](const State& s, State& dsdt, Real t) {
    const Vec3 a = accel(static_cast<double>(t), {static_cast<double>(s[0]), static_cast<double>(s[1]),
                                                  static_cast<double>(s[2])});
    dsdt = {s[3], s[4], s[5], a[0], a[1], a[2]};
  };

  std::vector<CartesianState> out;
  out.reserve(times.size());
  double last_t = cs0.epoch;
  auto observer = [&](const State& s, Real t) {
    last_t = static_cast<double>(t);
    out.push_back({{static_cast<double>(s[0]), static_cast<double>(s[1]), static_cast<double>(s[2])},
                   {static_cast<double>(s[3]), static_cast<double>(s[4]), static_cast<double>(s[5])},
                   static_cast<double>(t)});
  };

  if (times.size() == 1) {
    observer(x, times.front());
    return out;
  }

  using Stepper = odeint::runge_kutta_fehlberg78<State, Real, State, Real>;
  const double span = std::fabs(times.back() - times.front());
  double dt0 = std::max(span * 1e-6, 1e-3);
  if (cfg.max_step > 0.0) dt0 = std::min(dt0, cfg.max_step);
  if (!forward) dt0 = -dt0;
  std::vector<Real> rtimes(times.begin(), times.end());
  const auto checker = odeint::max_step_checker(
      static_cast<int>(std::min<std::size_t>(cfg.max_steps, static_cast<std::size_t>(1) << 30)));

  try {
    const Real abs_tol = cfg.abs_tol;
    const Real rel_tol = cfg.rel_tol;
    if (cfg.max_step > 0.0) {
      auto stepper = odeint::make_controlled(abs_tol, rel_tol, Real(cfg.max_step), Stepper());
      odeint::integrate_times(stepper, rhs, x, rtimes.begin(), rtimes.end(), Real(dt0), observer, checker);
    } else {
      auto stepper = odeint::make_controlled(abs_tol, rel_tol, Stepper());
      odeint::integrate_times(stepper, rhs, x, rtimes.begin(), rtimes.end(), Real(dt0), observer, checker);
    }
  } catch (const IntegrationError&) {
    throw;
  } catch (const std::exception& ex) {
    throw IntegrationError(std::string("reference integration failed: ") + ex.what(), last_t);
  }
  return out;
}

}  // namespace

Trajectory integrate(const CartesianState& cs0, const std::vector<double>& t_grid, const AccelerationFn& accel,
                     const IntegratorConfig& cfg, std::string label) {
  validate(cs0);
  cfg.validate();

  Trajectory traj;
  traj.model = std::move(label);
  traj.times = t_grid;
  if (t_grid.empty()) return traj;

  std::vector<double> times;
  times.reserve(t_grid.size() + 1);
  if (t_grid.front() != cs0.epoch) times.push_back(cs0.epoch);
  times.insert(times.end(), t_grid.begin(), t_grid.end());
  const bool forward = times.back() >= times.front();
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (forward ? times[k] < times[k - 1] : times[k] > times[k - 1]) {
      throw DomainError("time grid must be monotone away from the initial epoch");
    }
  }
  const std::size_t skip = times.size() - t_grid.size();

  const std::vector<CartesianState> out = cfg.extended_precision
                                              ? run_stepper<long double>(cs0, times, accel, cfg, forward)
                                              : run_stepper<double>(cs0, times, accel, cfg, forward);
  for (const auto& s : out) {
    if (!std::isfinite(s.position[0]) || !std::isfinite(s.velocity[0])) {
      throw IntegrationError("reference integration produced non-finite state", s.epoch);
    }
  }
  traj.states.assign(out.begin() + static_cast<std::ptrdiff_t>(skip), out.end());
  return traj;
}

Trajectory integrate_main_problem(const CartesianState& cs0, const std::vector<double>& t_grid,
                                  const PhysicalParams& params, const IntegratorConfig& cfg) {
  params.validate();
  return integrate(
      cs0, t_grid, [&](double, const Vec3& r) { return main_problem_acceleration(r, params); }, cfg, "reference");
}

Trajectory integrate_two_body(const CartesianState& cs0, const std::vector<double>& t_grid, double mu,
                              const IntegratorConfig& cfg) {
  if (!(mu > 0.0)) throw DomainError("gravitational parameter must be positive");
  return integrate(
      cs0, t_grid, [mu](double, const Vec3& r) { return point_mass_acceleration(r, mu); }, cfg, "two-body");
}

ConservationReport conservation(const Trajectory& traj, const PhysicalParams& params) {
  ConservationReport rep;
  if (traj.states.empty()) return rep;
  const double e0 = cartesian_energy(traj.states.front(), params);
  const double n0 = polar_angular_momentum(traj.states.front());
  for (const auto& s : traj.states) {
    rep.energy_drift = std::max(rep.energy_drift, std::fabs(cartesian_energy(s, params) - e0) / std::fabs(e0));
    rep.n_drift = std::max(rep.n_drift, std::fabs(polar_angular_momentum(s) - n0) / std::fabs(n0));
  }
  return rep;
}

std::vector<double> rss_error(const Trajectory& a, const Trajectory& b) {
  if (a.times != b.times || a.states.size() != b.states.size() || a.states.size() != a.times.size()) {
    throw DomainError("RSS error requires identical time grids");
  }
  std::vector<double> out(a.states.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = norm(a.states[k].position - b.states[k].position);
  return out;
}

}  // namespace flyby
