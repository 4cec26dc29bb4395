#include "flyby/torsion.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "flyby/errors.hpp"

namespace flyby {

namespace {

constexpr double kMinDenominator = 1e-6;
constexpr double kEquatorialSlack = 1e-13;

void check_order(int order) {
  if (order != 1 && order != 2) throw DomainError("torsion order must be 1 or 2");
}

void check_star(const PolarState& ps) {
  if (!std::isfinite(ps.r) || !std::isfinite(ps.theta) || !std::isfinite(ps.nu) || !std::isfinite(ps.R) ||
      !std::isfinite(ps.Theta) || !std::isfinite(ps.N)) {
    throw DomainError("torsion input has non-finite components");
  }
  if (!(ps.Theta > 0.0)) throw DomainError("torsion requires Theta > 0");
}

double angle_denominator(const TorsionContext& ctx) {
  const double den = ctx.phi2() - 2.0 * ctx.epsilon * ctx.dphi2_deps() - 0.5 * ctx.cinc * ctx.dphi2_dc();
  if (!(std::fabs(den) > kMinDenominator)) {
    throw DomainError("torsion angle equation is ill-conditioned (denominator " + std::to_string(den) + ")");
  }
  return den;
}

// Undo the theta and nu equations once the prime Theta is known.
PolarState invert_angles(const PolarState& star, double Theta, const PhysicalParams& params, int order) {
  const TorsionContext ctx = torsion_context(Theta, star.N, params, order);
  const double Phi = std::sqrt(ctx.phi2());
  const double den = angle_denominator(ctx);
  PolarState out = star;
  out.Theta = Theta;
  out.theta = star.theta * den / Phi;
  out.nu = star.nu + 0.5 * star.theta / Phi * ctx.dphi2_dc();
  return out;
}

}  // namespace

double TorsionContext::phi2() const {
  const double c2 = cinc * cinc;
  double v = 1.0 + epsilon * (3.0 * c2 - 1.0);
  if (order == 2) v += 0.25 * epsilon * epsilon * (1.0 - 21.0 * c2 * c2);
  return v;
}

double TorsionContext::dphi2_deps() const {
  const double c2 = cinc * cinc;
  double v = 3.0 * c2 - 1.0;
  if (order == 2) v += 0.5 * epsilon * (1.0 - 21.0 * c2 * c2);
  return v;
}

double TorsionContext::dphi2_dc() const {
  double v = 6.0 * epsilon * cinc;
  if (order == 2) v -= 21.0 * epsilon * epsilon * cinc * cinc * cinc;
  return v;
}

TorsionContext torsion_context(double Theta, double N, const PhysicalParams& params, int order) {
  check_order(order);
  if (!(Theta > 0.0)) throw DomainError("torsion requires Theta > 0");
  const double p = Theta * Theta / params.mu;
  TorsionContext ctx;
  ctx.epsilon = -0.5 * params.j2 * (params.alpha / p) * (params.alpha / p);
  ctx.cinc = N / Theta;
  ctx.order = order;
  return ctx;
}

double phi(double Theta, double N, const PhysicalParams& params, int order) {
  const double radicand = torsion_context(Theta, N, params, order).phi2();
  if (!(radicand > 0.0)) throw DomainError("torsion factor has a non-positive radicand");
  return std::sqrt(radicand);
}

PolarState torsion_forward(const PolarState& prime, const PhysicalParams& params, int order) {
  params.validate();
  check_star(prime);
  const TorsionContext ctx = torsion_context(prime.Theta, prime.N, params, order);
  const double Phi = phi(prime.Theta, prime.N, params, order);
  const double den = angle_denominator(ctx);
  PolarState out = prime;
  out.Theta = prime.Theta * Phi;
  out.theta = prime.theta * Phi / den;
  out.nu = prime.nu - 0.5 * out.theta / Phi * ctx.dphi2_dc();
  return out;
}

PolarState torsion_inverse_rootfind(const PolarState& star, const PhysicalParams& params, int order) {
  params.validate();
  check_star(star);
  check_order(order);
  if (params.j2 == 0.0) return star;

  const double target = star.Theta;
  auto residual = [&](double Theta) { return Theta * phi(Theta, star.N, params, order) - target; };
  // |Theta - Theta*| is about |eps| Theta*; a bracket a few times wider keeps
  // Phi^2 away from the region where it turns negative. Theta >= |N| for any
  // prime state.
  const TorsionContext ctx = torsion_context(target, star.N, params, order);
  const double width = std::min(0.5, 4.0 * std::fabs(ctx.epsilon) * (1.0 + 3.0 * ctx.cinc * ctx.cinc) + 1e-9);
  const double lo = std::max((1.0 - width) * target, std::fabs(star.N));
  const double hi = (1.0 + width) * target;
  const double f_lo = residual(lo);
  const double f_hi = residual(hi);
  if (f_lo * f_hi > 0.0) {
    throw ConvergenceError("torsion inverse: no sign change in the search bracket", f_lo / target);
  }

  std::uintmax_t max_iter = 200;
  const auto root = boost::math::tools::toms748_solve(residual, lo, hi, f_lo, f_hi,
                                                      boost::math::tools::eps_tolerance<double>(52), max_iter);
  const double Theta = 0.5 * (root.first + root.second);
  const double rel = std::fabs(residual(Theta)) / target;
  if (!(rel < 1e-13)) throw ConvergenceError("torsion inverse did not reach tolerance", rel);
  return invert_angles(star, Theta, params, order);
}

double torsion_series_theta(double Theta_star, double N, const PhysicalParams& params, int order) {
  const TorsionContext ctx = torsion_context(Theta_star, N, params, order);
  const double eps = ctx.epsilon;
  const double c2 = ctx.cinc * ctx.cinc;
  double factor = 1.0 - 0.5 * eps * (3.0 * c2 - 1.0);
  if (order == 2) factor -= 0.75 * eps * eps * (2.0 * c2 - 1.0) * (5.0 * c2 - 1.0);
  return Theta_star * factor;
}

PolarState torsion_inverse_series(const PolarState& star, const PhysicalParams& params, int order) {
  params.validate();
  check_star(star);
  check_order(order);
  if (params.j2 == 0.0) return star;
  // Equatorial orbits (Theta = |N|) map to Theta* = |N| Phi(|N|, N), where the
  // exact inverse is Theta = |N|. The truncated series would miss it by
  // O(eps^(order+1)), and near c = 1 that error becomes a spurious inclination
  // of order sqrt(eps^(order+1)).
  const double absN = std::fabs(star.N);
  if (absN > 0.5 * star.Theta && std::fabs(star.Theta - absN * phi(absN, star.N, params, order)) <=
                        kEquatorialSlack * star.Theta) {
    return invert_angles(star, absN, params, order);
  }
  return invert_angles(star, torsion_series_theta(star.Theta, star.N, params, order), params, order);
}

bool torsion_degenerate(const PolarState& star) { return std::fabs(star.N) > star.Theta; }

}  // namespace flyby
