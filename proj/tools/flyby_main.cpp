#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "harness/run.hpp"
#include "harness/scenario.hpp"
#include "harness/thirdbody_demo.hpp"

#ifndef FLYBY_PRESET_DIR
#define FLYBY_PRESET_DIR "presets"
#endif

namespace fs = std::filesystem;
using namespace flyby;
using namespace flyby::harness;

namespace {

// A bare preset name ("e1") resolves to <preset dir>/e1.json.
fs::path resolve_config(const std::string& arg, const fs::path& preset_dir) {
  fs::path p(arg);
  if (fs::exists(p)) return p;
  const fs::path candidate = preset_dir / (arg + ".json");
  if (fs::exists(candidate)) return candidate;
  return p;
}

int cmd_run(const fs::path& config, const std::string& models, int samples, const std::string& out, double tol) {
  ScenarioConfig cfg;
  try {
    cfg = load_scenario(config);
    if (!models.empty()) cfg.models = parse_model_list(models);
    if (samples > 0) cfg.n_samples = samples;
    if (!out.empty()) cfg.output = out;
    if (tol > 0.0) {
      cfg.integrator.rel_tol = tol;
      cfg.integrator.abs_tol = tol;
    }
  } catch (const std::exception& ex) {
    throw StageError("config", ex.what());
  }
  const ScenarioResult res = run_scenario(cfg);
  std::cout << summary_table(res);
  if (!cfg.output.empty()) {
    try {
      write_outputs(res, cfg.output);
    } catch (const std::exception& ex) {
      throw StageError("output", ex.what());
    }
    std::cout << "wrote " << (fs::path(cfg.output) / (cfg.name + "_errors.csv")).string() << "\n";
  }
  return 0;
}

int cmd_presets_list(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw StageError("presets", "no preset directory at " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream in(f);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const std::exception& ex) {
      std::printf("%-10s (unreadable: %s)\n", f.stem().string().c_str(), ex.what());
      continue;
    }
    std::printf("%-10s %s\n", f.stem().string().c_str(), j.value("description", std::string()).c_str());
  }
  return 0;
}

int cmd_thirdbody(const fs::path& config, const std::string& out) {
  ThirdBodyScenario cfg;
  try {
    cfg = load_thirdbody(config);
    if (!out.empty()) cfg.output = out;
  } catch (const std::exception& ex) {
    throw StageError("config", ex.what());
  }
  const ThirdBodyResult res = run_thirdbody(cfg);
  std::cout << summary_table(res);
  if (!cfg.output.empty()) {
    try {
      fs::create_directories(cfg.output);
      const fs::path csv = fs::path(cfg.output) / (cfg.name + "_errors.csv");
      emit_csv(series_rows(res), csv);
      std::cout << "wrote " << csv.string() << "\n";
    } catch (const std::exception& ex) {
      throw StageError("output", ex.what());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytical J2 flyby propagation and error experiments"};
  app.require_subcommand(1);
  std::string preset_dir = FLYBY_PRESET_DIR;
  app.add_option("--preset-dir", preset_dir, "Directory holding preset scenario files");

  auto* run = app.add_subcommand("run", "Run a scenario and report RSS errors against the reference");
  std::string config, models, out;
  int samples = 0;
  double tol = 0.0;
  run->add_option("--config", config, "Scenario JSON file or preset name")->required();
  run->add_option("--models", models, "Comma list of kepler,dri-common,first,first-plus,second");
  run->add_option("--samples", samples, "Number of uniform samples")->check(CLI::Range(2, 10'000'000));
  run->add_option("--out", out, "Output directory for CSV and summary");
  run->add_option("--tol", tol, "Reference integrator tolerance")->check(CLI::PositiveNumber);

  auto* presets = app.add_subcommand("presets", "Preset scenarios");
  presets->require_subcommand(1);
  auto* list = presets->add_subcommand("list", "List shipped presets");

  auto* demo = app.add_subcommand("thirdbody-demo", "Flyby with a circular third-body perturber");
  std::string demo_config, demo_out;
  demo->add_option("--config", demo_config, "Third-body scenario JSON file or preset name")->required();
  demo->add_option("--out", demo_out, "Output directory for the CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(resolve_config(config, preset_dir), models, samples, out, tol);
    if (*list) return cmd_presets_list(preset_dir);
    if (*demo) return cmd_thirdbody(resolve_config(demo_config, preset_dir), demo_out);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
