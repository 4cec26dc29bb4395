#pragma once

// Flyby with a distant perturber on a circular orbit. The fully perturbed
// numerical trajectory is the truth; the comparison shows how the P2-only
// force, the main problem alone, and the analytical second-order model (whose
// boundary conditions assume Keplerian motion at infinity) drift from it.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "flyby/reference.hpp"
#include "flyby/thirdbody.hpp"
#include "harness/run.hpp"

namespace flyby::harness {

struct ThirdBodyScenario {
  std::string name;
  PhysicalParams body;
  CartesianState state0;
  double mu_b = 0.0;
  double perturber_radius = 0.0;  // km
  double perturber_period = 0.0;  // s
  double perturber_phase = 0.0;   // rad at t = 0
  int jmax = 2;
  double t_span = 0.0;
  int n_samples = 500;
  std::string output;
  IntegratorConfig integrator;

  void validate() const;
  ThirdBodyConfig perturber() const;
  std::vector<double> time_grid() const;
};

ThirdBodyScenario thirdbody_from_json(const nlohmann::json& j);
ThirdBodyScenario load_thirdbody(const std::filesystem::path& path);

struct ThirdBodyResult {
  ThirdBodyScenario config;
  Trajectory exact;
  std::vector<double> rho;  // |r| / |r_B| per sample
  struct Series {
    std::string label;
    std::vector<double> rss_km;
  };
  std::vector<Series> series;
};

ThirdBodyResult run_thirdbody(const ThirdBodyScenario& cfg);
std::vector<SeriesRow> series_rows(const ThirdBodyResult& result);
std::string summary_table(const ThirdBodyResult& result);

}  // namespace flyby::harness
