#include "flyby/parallax.hpp"

#include <cmath>
#include <string>

#include "flyby/errors.hpp"

namespace flyby {

EtaStatus classify_eta(double eta) {
  if (!(eta >= kEtaHardLimit)) {
    throw DomainError("eta = " + std::to_string(eta) + " is too close to parabolic for the correction series");
  }
  return eta < kEtaWarnLimit ? EtaStatus::warn : EtaStatus::ok;
}

double CorrectionVector::operator[](PolarComponent c) const {
  switch (c) {
    case PolarComponent::r: return dr;
    case PolarComponent::theta: return dtheta;
    case PolarComponent::nu: return dnu;
    case PolarComponent::R: return dR;
    case PolarComponent::Theta: return dTheta;
    case PolarComponent::N: return dN;
  }
  return 0.0;
}

double c0_value_polar(const PolarState& ps, const PhysicalParams& params) {
  const DerivedGeometry geo = derive_geometry(ps, params);
  const double a2p2 = params.alpha * params.alpha / (geo.p * geo.p);
  const double e = geo.p / ps.Theta * std::hypot(geo.C, geo.S);
  const double eta = std::sqrt((e - 1.0) * (e + 1.0));
  const double s2 = geo.s * geo.s;
  const double e4 = e * e * e * e;
  const double bracket = eta * eta * eta * (geo.C * geo.C - geo.S * geo.S) + (3.0 * e * e - 2.0) * geo.C * geo.S;
  return ps.Theta * 0.25 * a2p2 *
         ((3.0 * s2 - 2.0) * eta - geo.p * geo.p * s2 / (e4 * ps.Theta * ps.Theta) * bracket);
}

double u1_value_polar(const PolarState& ps, const PhysicalParams& params) {
  const DerivedGeometry geo = derive_geometry(ps, params);
  const double a2p2 = params.alpha * params.alpha / (geo.p * geo.p);
  const double s2 = geo.s * geo.s;
  const double periodic = (4.0 * geo.kappa + 3.0) * s2 * std::sin(2.0 * ps.theta) +
                          (4.0 - 6.0 * s2 - 2.0 * s2 * std::cos(2.0 * ps.theta)) * geo.sigma;
  return -ps.Theta * 0.125 * a2p2 * periodic + c0_value_polar(ps, params);
}

double q_constants(const HyperbolicDelaunay& d, const PhysicalParams& params) {
  const double eta = -d.G / d.L;
  const double e2 = 1.0 + eta * eta;
  const double e4 = e2 * e2;
  const double p = d.G * d.G / params.mu;
  const double a2p2 = params.alpha * params.alpha / (p * p);
  const double a4p4 = a2p2 * a2p2;
  const double c = d.H / d.G;
  const double s2 = 1.0 - c * c;
  const double s4 = s2 * s2;
  const double eta3 = eta * eta * eta;
  const double w = kPi + std::atan(eta);
  const double g = d.g;

  const double q0 =
      d.G * a4p4 / (256.0 * e2) *
      (-2.0 * s2 *
           (3.0 * e4 * (17.0 * s2 - 18.0) + 8.0 * e2 * (75.0 * s2 - 68.0) + 8.0 * (s2 + 6.0) +
            96.0 * eta3 * (5.0 * s2 - 4.0) * w) *
           std::sin(2.0 * g) -
       3.0 * (3.0 * e4 + 6.0 * e2 - 16.0) * s4 * std::sin(4.0 * g) +
       4.0 * s2 / (eta * eta) *
           (6.0 * eta * eta * (e4 * (15.0 * s2 - 14.0) + 4.0 * (3.0 * e2 - 2.0) * (5.0 * s2 - 4.0)) * w +
            eta * (e4 * (278.0 - 329.0 * s2) + e2 * (298.0 * s2 - 284.0) + 4.0 * (s2 + 6.0))) *
           std::cos(2.0 * g) +
       6.0 * eta * (e2 + 8.0) * s4 * std::cos(4.0 * g));

  const double q1 = d.G * a4p4 * 3.0 / (128.0 * eta) * (1.0 - s2) *
                    (2.0 * e2 * eta * (5.0 * s2 + 13.0) * w - e2 * (11.0 * s2 + 75.0) - 85.0 * s2 + 107.0);

  const double q2 = d.G * a4p4 / (128.0 * eta) * (81.0 * e2 - 30.0 * e2 * eta * w - 49.0);

  return q0 + q1 + q2;
}

double poisson_bracket(const Gradient& dF, const Gradient& dG) {
  return dF[kEll] * dG[kL] - dF[kL] * dG[kEll] + dF[kArgp] * dG[kG] - dF[kG] * dG[kArgp] + dF[kNode] * dG[kH] -
         dF[kH] * dG[kNode];
}

PolarJacobian polar_jacobian(const HyperbolicDelaunay& d, const PhysicalParams& params) {
  const PolarState ps = polar_from_delaunay(d, params.mu);
  const double eta = -d.G / d.L;
  const double eta3 = eta * eta * eta;
  const double e2 = 1.0 + eta * eta;
  const double p = d.G * d.G / params.mu;
  const double Th = ps.Theta;
  const double r = ps.r;
  const double R = ps.R;
  const double p_r = p / r;

  const double r_G = p / (e2 * Th) * (p_r - 1.0);
  const double theta_G = -p * R / (e2 * Th * Th) * (p_r + 1.0);
  const double R_G = -p_r * p_r * R / (e2 * Th);

  PolarJacobian J{};
  auto& jr = J[static_cast<std::size_t>(PolarComponent::r)];
  jr[kEll] = p * p * R / (eta3 * Th);
  jr[kL] = eta * (r_G - 2.0 * r / Th);
  jr[kG] = r_G;

  auto& jt = J[static_cast<std::size_t>(PolarComponent::theta)];
  jt[kEll] = p_r * p_r / eta3;
  jt[kArgp] = 1.0;
  jt[kL] = eta * theta_G;
  jt[kG] = theta_G;

  J[static_cast<std::size_t>(PolarComponent::nu)][kNode] = 1.0;

  auto& jR = J[static_cast<std::size_t>(PolarComponent::R)];
  jR[kEll] = e2 / eta3 * Th * Th / (r * r) * r_G;
  jR[kL] = eta * (R_G + R / Th);
  jR[kG] = R_G;

  J[static_cast<std::size_t>(PolarComponent::Theta)][kG] = 1.0;
  J[static_cast<std::size_t>(PolarComponent::N)][kH] = 1.0;
  return J;
}

Gradient generator_gradient(Generator which, const HyperbolicDelaunay& d, const PhysicalParams& params) {
  if (which == Generator::u1) {
    return value_and_gradient([&](const BasicDelaunay<Dual6>& x) { return u1_value(x, params); }, d).second;
  }
  return value_and_gradient([&](const BasicDelaunay<Dual6>& x) { return u2_value(x, params); }, d).second;
}

double poisson_bracket(PolarComponent xi, Generator which, const HyperbolicDelaunay& d,
                       const PhysicalParams& params) {
  const PolarJacobian J = polar_jacobian(d, params);
  return poisson_bracket(J[static_cast<std::size_t>(xi)], generator_gradient(which, d, params));
}

CorrectionVector first_order_corrections(const HyperbolicDelaunay& d, const PhysicalParams& params) {
  const auto s = first_order_series(d, params);
  CorrectionVector cv;
  cv.dr = s[0];
  cv.dtheta = s[1];
  cv.dnu = s[2];
  cv.dR = s[3];
  cv.dTheta = s[4];
  cv.order = 1;
  return cv;
}

namespace {

BasicDelaunay<Dual6> seeded(const HyperbolicDelaunay& d) {
  BasicDelaunay<Dual6> x;
  x.ell = Dual6::variable(d.ell, kEll);
  x.g = Dual6::variable(d.g, kArgp);
  x.h = Dual6::variable(d.h, kNode);
  x.L = Dual6::variable(d.L, kL);
  x.G = Dual6::variable(d.G, kG);
  x.H = Dual6::variable(d.H, kH);
  return x;
}

CorrectionVector from_components(const std::array<double, 5>& v, int order) {
  CorrectionVector cv;
  cv.dr = v[0];
  cv.dtheta = v[1];
  cv.dnu = v[2];
  cv.dR = v[3];
  cv.dTheta = v[4];
  cv.order = order;
  return cv;
}

}  // namespace

SecondOrderParts second_order_parts(const HyperbolicDelaunay& d, const PhysicalParams& params) {
  const BasicDelaunay<Dual6> x = seeded(d);
  const auto xi01 = first_order_series(x, params);
  const Dual6 u1 = u1_value(x, params);
  const Dual6 u2 = u2_value(x, params);
  const PolarJacobian J = polar_jacobian(d, params);

  std::array<double, 5> iterated{}, direct{};
  for (std::size_t k = 0; k < 5; ++k) {
    iterated[k] = poisson_bracket(xi01[k].d, u1.d);
    direct[k] = poisson_bracket(J[k], u2.d);
  }
  return {from_components(iterated, 2), from_components(direct, 2)};
}

CorrectionVector second_order_corrections(const HyperbolicDelaunay& d, const PhysicalParams& params) {
  const SecondOrderParts parts = second_order_parts(d, params);
  CorrectionVector cv = parts.iterated;
  cv.dr += parts.direct.dr;
  cv.dtheta += parts.direct.dtheta;
  cv.dnu += parts.direct.dnu;
  cv.dR += parts.direct.dR;
  cv.dTheta += parts.direct.dTheta;
  return cv;
}

namespace {

void accumulate(PolarState& ps, const CorrectionVector& cv, double weight) {
  ps.r += weight * cv.dr;
  ps.theta += weight * cv.dtheta;
  ps.nu += weight * cv.dnu;
  ps.R += weight * cv.dR;
  ps.Theta += weight * cv.dTheta;
}

HyperbolicDelaunay prepare(const PolarState& ps, int order, const PhysicalParams& params) {
  params.validate();
  validate(ps);
  if (order != 1 && order != 2) throw DomainError("parallax map order must be 1 or 2");
  const HyperbolicDelaunay d = delaunay_from_polar(ps, params.mu);
  classify_eta(-d.G / d.L);
  return d;
}

}  // namespace

PolarState mean_to_osculating(const PolarState& mean, int order, const PhysicalParams& params) {
  const HyperbolicDelaunay d = prepare(mean, order, params);
  if (params.j2 == 0.0) return mean;
  PolarState out = mean;
  accumulate(out, first_order_corrections(d, params), params.j2);
  if (order == 2) accumulate(out, second_order_corrections(d, params), 0.5 * params.j2 * params.j2);
  return out;
}

PolarState osculating_to_mean(const PolarState& osc, int order, const PhysicalParams& params) {
  const HyperbolicDelaunay d = prepare(osc, order, params);
  if (params.j2 == 0.0) return osc;
  PolarState out = osc;
  accumulate(out, first_order_corrections(d, params), -params.j2);
  if (order == 2) {
    const SecondOrderParts parts = second_order_parts(d, params);
    const double w = 0.5 * params.j2 * params.j2;
    accumulate(out, parts.iterated, w);
    accumulate(out, parts.direct, -w);
  }
  return out;
}

}  // namespace flyby
