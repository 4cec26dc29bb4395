#include "flyby/thirdbody.hpp"

#include <cmath>
#include <string>

#include "flyby/errors.hpp"

namespace flyby {

void ThirdBodyConfig::validate() const {
  if (!(mu_b >= 0.0)) throw DomainError("perturber gravitational parameter must be non-negative");
  if (!r_b) throw DomainError("perturber position provider is missing");
  if (jmax < 2) throw DomainError("expansion order jmax must be at least 2");
}

PerturberProvider circular_perturber(double radius, double rate, double phase0) {
  if (!(radius > 0.0)) throw DomainError("perturber orbit radius must be positive");
  return [=](double t) {
    const double a = phase0 + rate * t;
    return Vec3{radius * std::cos(a), radius * std::sin(a), 0.0};
  };
}

std::vector<double> legendre_table(int jmax, double x) {
  if (jmax < 0) throw DomainError("Legendre degree must be non-negative");
  std::vector<double> P(static_cast<std::size_t>(jmax) + 1);
  P[0] = 1.0;
  if (jmax >= 1) P[1] = x;
  for (int j = 2; j <= jmax; ++j) {
    P[j] = ((2.0 * j - 1.0) * x * P[j - 1] - (j - 1.0) * P[j - 2]) / j;
  }
  return P;
}

double legendre_p(int j, double x) { return legendre_table(j, x).back(); }

double legendre_potential(double r, double r_b, double cos_psi, int jmax, double mu_b) {
  if (!(r >= 0.0) || !(r < r_b)) {
    throw DomainError("Legendre expansion requires r < r_B (r = " + std::to_string(r) +
                      ", r_B = " + std::to_string(r_b) + ")");
  }
  if (jmax < 2) throw DomainError("expansion order jmax must be at least 2");
  const auto P = legendre_table(jmax, cos_psi);
  const double rho = r / r_b;
  double rho_j = rho * rho;
  double sum = 0.0;
  for (int j = 2; j <= jmax; ++j) {
    sum += rho_j * P[j];
    rho_j *= rho;
  }
  return -mu_b / r_b * sum;
}

double exact_third_body_potential(const Vec3& r, const Vec3& r_b, double mu_b) {
  const double rb = norm(r_b);
  return -mu_b * (1.0 / norm(r - r_b) - dot(r, r_b) / (rb * rb * rb));
}

Vec3 exact_third_body_acceleration(const Vec3& r, const Vec3& r_b, double mu_b) {
  const Vec3 d = r - r_b;
  const double dn = norm(d);
  const double rb = norm(r_b);
  return (-mu_b / (dn * dn * dn)) * d - (mu_b / (rb * rb * rb)) * r_b;
}

Vec3 p2_third_body_acceleration(const Vec3& r, const Vec3& r_b, double mu_b) {
  const double rb = norm(r_b);
  const Vec3 u = (1.0 / rb) * r_b;
  return (mu_b / (rb * rb * rb)) * (3.0 * dot(r, u) * u - r);
}

Trajectory integrate_third_body(const CartesianState& cs0, const std::vector<double>& t_grid,
                                const PhysicalParams& params, const ThirdBodyConfig& tb, ThirdBodyMode mode,
                                const IntegratorConfig& cfg) {
  params.validate();
  tb.validate();
  auto accel = [&](double t, const Vec3& r) {
    const Vec3 rb = tb.r_b(t);
    if (!(norm(r) < norm(rb))) {
      throw IntegrationError("satellite left the convergence domain r < r_B", t);
    }
    const Vec3 pert = mode == ThirdBodyMode::exact ? exact_third_body_acceleration(r, rb, tb.mu_b)
                                                   : p2_third_body_acceleration(r, rb, tb.mu_b);
    return main_problem_acceleration(r, params) + pert;
  };
  return integrate(cs0, t_grid, accel, cfg, mode == ThirdBodyMode::exact ? "third-body-exact" : "third-body-p2");
}

}  // namespace flyby
