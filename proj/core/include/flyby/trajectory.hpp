#pragma once

#include <string>
#include <vector>

#include "flyby/types.hpp"

namespace flyby {

struct TrajectoryFlags {
  bool eta_warning = false;             // mean eta below the warning line
  bool degenerate_inclination = false;  // Keplerian image has N/Theta* > 1
  bool equatorial_chart = false;        // node fixed at 0 for an equatorial state
};

// Time-stamped Cartesian states produced by one model.
struct Trajectory {
  std::string model;
  std::vector<double> times;  // s
  std::vector<CartesianState> states;
  TrajectoryFlags flags;
};

}  // namespace flyby
