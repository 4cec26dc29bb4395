#pragma once

// Scenario configuration for the error experiments. Configs are JSON files;
// angles are given in degrees and converted on load.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "flyby/core.hpp"
#include "flyby/propagator.hpp"
#include "flyby/reference.hpp"

namespace flyby::harness {

// Initial conic, degrees for the angles.
struct ElementsDeg {
  double a = 0.0;  // km
  double e = 0.0;
  double i = 0.0;
  double raan = 0.0;
  double argp = 0.0;
  double M = 0.0;
};

struct ScenarioConfig {
  std::string name;
  std::string description;
  PhysicalParams body;
  ElementsDeg elements0;
  double t_span = 0.0;  // s, from epoch 0
  int n_samples = 500;
  std::vector<ModelKind> models;
  std::string output;  // directory for CSV and summary files; empty = no files
  double perigee_window = 1800.0;  // half-width, s
  IntegratorConfig integrator;
  FirstPlusUpgrade first_plus = FirstPlusUpgrade::both;

  // Throws DomainError; e <= 1 is reported as "hyperbolic regime required".
  void validate() const;

  HyperbolicElements elements_rad() const;
  std::vector<double> time_grid() const;
  CartesianState initial_state() const;
};

ScenarioConfig scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);

// Throws DomainError naming the file on I/O or schema problems.
ScenarioConfig load_scenario(const std::filesystem::path& path);

std::vector<ModelKind> parse_model_list(const std::string& csv);

}  // namespace flyby::harness
