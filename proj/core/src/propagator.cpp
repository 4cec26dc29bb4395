#include "flyby/propagator.hpp"

#include <array>
#include <cmath>
#include <string>

#include "flyby/core.hpp"
#include "flyby/errors.hpp"
#include "flyby/parallax.hpp"
#include "flyby/torsion.hpp"

namespace flyby {

namespace {

constexpr std::array<ModelKind, 5> kModels{ModelKind::kepler, ModelKind::dri_common, ModelKind::dri_natural_1,
                                           ModelKind::first_plus, ModelKind::second};

void check_hyperbolic(const CartesianState& cs, const PhysicalParams& params) {
  const double energy = 0.5 * dot(cs.velocity, cs.velocity) - params.mu / norm(cs.position);
  if (!(energy > 0.0)) {
    throw NotHyperbolicError("hyperbolic regime required: two-body energy " + std::to_string(energy) +
                             " km^2/s^2 is not positive");
  }
}

}  // namespace

std::string_view model_name(ModelKind m) {
  switch (m) {
    case ModelKind::kepler: return "kepler";
    case ModelKind::dri_common: return "dri-common";
    case ModelKind::dri_natural_1: return "first";
    case ModelKind::first_plus: return "first-plus";
    case ModelKind::second: return "second";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model(std::string_view name) {
  for (ModelKind m : kModels)
    if (model_name(m) == name) return m;
  return std::nullopt;
}

const std::vector<ModelKind>& all_models() {
  static const std::vector<ModelKind> models(kModels.begin(), kModels.end());
  return models;
}

PipelineSpec pipeline_for(ModelKind m, FirstPlusUpgrade upgrade) {
  switch (m) {
    case ModelKind::kepler: return {false, 0, 1, 1};
    case ModelKind::dri_common: return {true, 0, 1, 1};
    case ModelKind::dri_natural_1: return {true, 1, 1, 1};
    case ModelKind::first_plus:
      switch (upgrade) {
        case FirstPlusUpgrade::both: return {true, 1, 2, 2};
        case FirstPlusUpgrade::mean_motion_only: return {true, 1, 2, 1};
        case FirstPlusUpgrade::torsion_inverse_only: return {true, 1, 1, 2};
      }
      break;
    case ModelKind::second: return {true, 2, 2, 2};
  }
  throw DomainError("unknown model");
}

PolarState initial_polar_state(const CartesianState& cs, bool* equatorial) {
  const bool eq = node_is_undefined(cs);
  if (equatorial) *equatorial = eq;
  return eq ? cartesian_to_polar(cs, 0.0) : cartesian_to_polar(cs);
}

double mean_motion(ModelKind model, const PolarState& prime, const PhysicalParams& params,
                   FirstPlusUpgrade upgrade) {
  params.validate();
  const PipelineSpec spec = pipeline_for(model, upgrade);
  const PolarState star = spec.torsion ? torsion_forward(prime, params, spec.torsion_order) : prime;
  const HyperbolicDelaunay d = delaunay_from_polar(star, params.mu);
  return mean_motion(d, params.mu);
}

Trajectory propagate(ModelKind model, const CartesianState& osc0, const std::vector<double>& t_grid,
                     const PhysicalParams& params, const PropagateOptions& opts) {
  params.validate();
  validate(osc0);
  check_hyperbolic(osc0, params);
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    if (!(t_grid[k] >= t_grid[k - 1])) throw DomainError("time grid must be sorted");
  }

  Trajectory traj;
  traj.model = std::string(model_name(model));
  traj.times = t_grid;
  traj.states.reserve(t_grid.size());

  const PipelineSpec spec = pipeline_for(model, opts.first_plus);
  const PolarState osc_polar = initial_polar_state(osc0, &traj.flags.equatorial_chart);

  PolarState prime0 = osc_polar;
  if (spec.parallax_order > 0) prime0 = osculating_to_mean(osc_polar, spec.parallax_order, params);
  const PolarState star0 = spec.torsion ? torsion_forward(prime0, params, spec.torsion_order) : prime0;

  traj.flags.degenerate_inclination = torsion_degenerate(star0);
  {
    const HyperbolicDelaunay dp = delaunay_from_polar(prime0, params.mu);
    if (classify_eta(-dp.G / dp.L) == EtaStatus::warn) traj.flags.eta_warning = true;
  }

  const HyperbolicDelaunay dstar0 = delaunay_from_polar(star0, params.mu);
  const double n = mean_motion(dstar0, params.mu);

  for (double t : t_grid) {
    HyperbolicDelaunay dstar = dstar0;
    dstar.ell += n * (t - osc0.epoch);
    const PolarState star = polar_from_delaunay(dstar, params.mu);
    PolarState out = star;
    if (spec.torsion) out = torsion_inverse_series(star, params, spec.inverse_series_order);
    if (spec.parallax_order > 0) out = mean_to_osculating(out, spec.parallax_order, params);
    traj.states.push_back(polar_to_cartesian(out, t));
  }
  return traj;
}

}  // namespace flyby
