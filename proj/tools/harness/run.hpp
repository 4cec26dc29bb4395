#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "flyby/errors.hpp"
#include "flyby/reference.hpp"
#include "flyby/trajectory.hpp"
#include "harness/scenario.hpp"

namespace flyby::harness {

// A scenario stage failed. what() reads "<stage> failed[ at t = ...]: <cause>".
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& cause, double time = std::nan(""));

  const std::string& stage() const noexcept { return stage_; }
  double time() const noexcept { return time_; }

 private:
  std::string stage_;
  double time_;
};

struct ErrorSummary {
  double initial_km = 0.0;
  double perigee_max_km = 0.0;
  double perigee_max_time = 0.0;
  double final_km = 0.0;
};

struct ModelResult {
  ModelKind model = ModelKind::kepler;
  Trajectory trajectory;
  std::vector<double> rss_km;
  ErrorSummary summary;
};

struct ScenarioResult {
  ScenarioConfig config;
  Trajectory reference;
  ConservationReport conservation;
  // Samples within the perigee window of the reference trajectory.
  std::size_t perigee_index = 0;
  double window_begin = 0.0;
  double window_end = 0.0;
  std::vector<ModelResult> models;

  const ModelResult& at(ModelKind m) const;
};

// One row per (t, model) of the emitted CSV.
struct SeriesRow {
  double t = 0.0;
  std::string model;
  double rss_km = 0.0;
  std::string flag;
};

// Integrates the reference once, then propagates the requested models on the
// same grid (concurrently) and computes their RSS errors.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Index of the minimum-radius sample and the +-half_width window around it.
std::size_t perigee_sample(const Trajectory& traj);
ErrorSummary summarize(const std::vector<double>& times, const std::vector<double>& rss, double window_begin,
                       double window_end);

// "-" or a '|'-joined list of eta-warning, degenerate-c, equatorial-chart.
std::string flag_string(const TrajectoryFlags& flags);

std::vector<SeriesRow> series_rows(const ScenarioResult& result);

// Header t_s,model,rss_km,flag; numbers as %.17e. Throws std::runtime_error
// carrying the OS message on I/O failure.
void emit_csv(const std::vector<SeriesRow>& rows, const std::filesystem::path& path);
std::vector<SeriesRow> read_csv(const std::filesystem::path& path);

nlohmann::json summary_json(const ScenarioResult& result);
std::string summary_table(const ScenarioResult& result);

// Writes <output>/<name>_errors.csv and <output>/<name>_summary.json.
void write_outputs(const ScenarioResult& result, const std::filesystem::path& dir);

}  // namespace flyby::harness
