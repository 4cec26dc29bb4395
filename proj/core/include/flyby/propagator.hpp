#pragma once

// Analytical propagation pipelines, from pure Kepler up to the second-order
// parallax elimination followed by the torsion.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flyby/trajectory.hpp"
#include "flyby/types.hpp"

namespace flyby {

enum class ModelKind { kepler, dri_common, dri_natural_1, first_plus, second };

// CLI spelling: kepler, dri-common, first, first-plus, second.
std::string_view model_name(ModelKind m);
std::optional<ModelKind> parse_model(std::string_view name);
const std::vector<ModelKind>& all_models();

// What FIRST_PLUS upgrades relative to the first-order model.
enum class FirstPlusUpgrade { both, mean_motion_only, torsion_inverse_only };

struct PipelineSpec {
  bool torsion = false;           // false only for KEPLER
  int parallax_order = 0;         // 0: osculating state fed straight to the torsion
  int torsion_order = 1;          // order of Phi in the forward torsion (sets the mean motion)
  int inverse_series_order = 1;   // order of the series inverse of the torsion
};

PipelineSpec pipeline_for(ModelKind m, FirstPlusUpgrade upgrade = FirstPlusUpgrade::both);

struct PropagateOptions {
  FirstPlusUpgrade first_plus = FirstPlusUpgrade::both;
};

// Propagates an osculating Cartesian state to every time in t_grid (absolute
// times; the flow runs for t - osc0.epoch). Throws NotHyperbolicError when the
// two-body energy is not positive.
Trajectory propagate(ModelKind model, const CartesianState& osc0, const std::vector<double>& t_grid,
                     const PhysicalParams& params, const PropagateOptions& opts = {});

// Mean motion of the Keplerian flow that a model attaches to a mean (prime)
// polar state: n = -mu^2/L*^3 after the model's forward torsion. The order-2
// torsion carries the J2^2 secular term of the intermediary.
double mean_motion(ModelKind model, const PolarState& prime, const PhysicalParams& params,
                   FirstPlusUpgrade upgrade = FirstPlusUpgrade::both);

// Polar chart used by the pipelines: equatorial states get node longitude 0.
PolarState initial_polar_state(const CartesianState& cs, bool* equatorial = nullptr);

}  // namespace flyby
