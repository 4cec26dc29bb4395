#include "harness/run.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "flyby/propagator.hpp"

namespace flyby::harness {

namespace {

std::string stage_message(const std::string& stage, const std::string& cause, double time) {
  std::string msg = stage + " failed";
  if (std::isfinite(time)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " at t = %.3f s", time);
    msg += buf;
  }
  return msg + ": " + cause;
}

ModelResult run_model(ModelKind m, const ScenarioConfig& cfg, const CartesianState& cs0,
                      const std::vector<double>& grid, const Trajectory& reference) {
  const std::string stage = "propagate:" + std::string(model_name(m));
  ModelResult res;
  res.model = m;
  try {
    PropagateOptions opts;
    opts.first_plus = cfg.first_plus;
    res.trajectory = propagate(m, cs0, grid, cfg.body, opts);
  } catch (const IntegrationError& ex) {
    throw StageError(stage, ex.what(), ex.time());
  } catch (const std::exception& ex) {
    throw StageError(stage, ex.what());
  }
  try {
    res.rss_km = rss_error(res.trajectory, reference);
  } catch (const std::exception& ex) {
    throw StageError("rss:" + std::string(model_name(m)), ex.what());
  }
  return res;
}

}  // namespace

StageError::StageError(std::string stage, const std::string& cause, double time)
    : Error(stage_message(stage, cause, time)), stage_(std::move(stage)), time_(time) {}

const ModelResult& ScenarioResult::at(ModelKind m) const {
  for (const auto& r : models)
    if (r.model == m) return r;
  throw DomainError("model '" + std::string(model_name(m)) + "' was not run in scenario " + config.name);
}

std::size_t perigee_sample(const Trajectory& traj) {
  if (traj.states.empty()) throw DomainError("empty trajectory has no perigee");
  std::size_t best = 0;
  double rmin = norm(traj.states[0].position);
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    const double r = norm(traj.states[k].position);
    if (r < rmin) {
      rmin = r;
      best = k;
    }
  }
  return best;
}

ErrorSummary summarize(const std::vector<double>& times, const std::vector<double>& rss, double window_begin,
                       double window_end) {
  if (rss.empty() || rss.size() != times.size()) throw DomainError("error series is empty or misaligned");
  ErrorSummary s;
  s.initial_km = rss.front();
  s.final_km = rss.back();
  for (std::size_t k = 0; k < rss.size(); ++k) {
    if (times[k] < window_begin || times[k] > window_end) continue;
    if (rss[k] >= s.perigee_max_km) {
      s.perigee_max_km = rss[k];
      s.perigee_max_time = times[k];
    }
  }
  return s;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  try {
    cfg.validate();
  } catch (const std::exception& ex) {
    throw StageError("config", ex.what());
  }

  ScenarioResult out;
  out.config = cfg;
  const std::vector<double> grid = cfg.time_grid();

  CartesianState cs0;
  try {
    cs0 = cfg.initial_state();
  } catch (const std::exception& ex) {
    throw StageError("initial-state", ex.what());
  }

  try {
    out.reference = integrate_main_problem(cs0, grid, cfg.body, cfg.integrator);
  } catch (const IntegrationError& ex) {
    throw StageError("reference", ex.what(), ex.time());
  } catch (const std::exception& ex) {
    throw StageError("reference", ex.what());
  }
  out.conservation = conservation(out.reference, cfg.body);

  out.perigee_index = perigee_sample(out.reference);
  const double tp = grid[out.perigee_index];
  out.window_begin = tp - cfg.perigee_window;
  out.window_end = tp + cfg.perigee_window;

  std::vector<std::future<ModelResult>> jobs;
  jobs.reserve(cfg.models.size());
  for (ModelKind m : cfg.models) {
    jobs.push_back(std::async(std::launch::async, run_model, m, std::cref(cfg), std::cref(cs0), std::cref(grid),
                              std::cref(out.reference)));
  }
  for (auto& job : jobs) {
    ModelResult r = job.get();
    r.summary = summarize(grid, r.rss_km, out.window_begin, out.window_end);
    out.models.push_back(std::move(r));
  }
  return out;
}

std::string flag_string(const TrajectoryFlags& flags) {
  std::string s;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!s.empty()) s += '|';
    s += name;
  };
  add(flags.eta_warning, "eta-warning");
  add(flags.degenerate_inclination, "degenerate-c");
  add(flags.equatorial_chart, "equatorial-chart");
  return s.empty() ? "-" : s;
}

std::vector<SeriesRow> series_rows(const ScenarioResult& result) {
  std::vector<SeriesRow> rows;
  const auto& times = result.reference.times;
  rows.reserve(times.size() * result.models.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    for (const auto& m : result.models) {
      rows.push_back({times[k], std::string(model_name(m.model)), m.rss_km[k], flag_string(m.trajectory.flags)});
    }
  }
  return rows;
}

void emit_csv(const std::vector<SeriesRow>& rows, const std::filesystem::path& path) {
  if (rows.empty()) throw DomainError("refusing to write an empty error series");
  std::FILE* fp = std::fopen(path.string().c_str(), "w");
  if (!fp) throw std::runtime_error(path.string() + ": " + std::strerror(errno));
  std::fputs("t_s,model,rss_km,flag\n", fp);
  for (const auto& r : rows) {
    std::fprintf(fp, "%.17e,%s,%.17e,%s\n", r.t, r.model.c_str(), r.rss_km, r.flag.c_str());
  }
  const bool bad = std::ferror(fp) != 0;
  const int err = errno;
  if (std::fclose(fp) != 0 || bad) throw std::runtime_error(path.string() + ": " + std::strerror(err));
}

std::vector<SeriesRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": " + std::strerror(errno));
  std::string line;
  if (!std::getline(in, line) || line != "t_s,model,rss_km,flag") {
    throw DomainError(path.string() + ": unexpected CSV header");
  }
  std::vector<SeriesRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string t, model, rss, flag;
    if (!std::getline(ss, t, ',') || !std::getline(ss, model, ',') || !std::getline(ss, rss, ',') ||
        !std::getline(ss, flag)) {
      throw DomainError(path.string() + ": malformed row '" + line + "'");
    }
    rows.push_back({std::strtod(t.c_str(), nullptr), model, std::strtod(rss.c_str(), nullptr), flag});
  }
  return rows;
}

nlohmann::json summary_json(const ScenarioResult& result) {
  nlohmann::json models = nlohmann::json::object();
  for (const auto& m : result.models) {
    const auto& s = m.summary;
    models[std::string(model_name(m.model))] = {
        {"initial_km", s.initial_km},       {"perigee_max_km", s.perigee_max_km},
        {"perigee_max_time_s", s.perigee_max_time}, {"final_km", s.final_km},
        {"eta_warning", m.trajectory.flags.eta_warning},
        {"degenerate_c", m.trajectory.flags.degenerate_inclination},
        {"equatorial_chart", m.trajectory.flags.equatorial_chart}};
  }
  return {{"scenario", result.config.name},
          {"samples", result.reference.times.size()},
          {"perigee_time_s", result.reference.times[result.perigee_index]},
          {"perigee_window_s", {result.window_begin, result.window_end}},
          {"reference", {{"energy_drift", result.conservation.energy_drift}, {"n_drift", result.conservation.n_drift}}},
          {"models", models}};
}

std::string summary_table(const ScenarioResult& result) {
  std::ostringstream os;
  os << "scenario " << result.config.name << ": " << result.reference.times.size() << " samples, perigee at t = "
     << std::fixed << std::setprecision(1) << result.reference.times[result.perigee_index] << " s\n";
  os << std::scientific << std::setprecision(2) << "reference drift: energy " << result.conservation.energy_drift
     << ", N " << result.conservation.n_drift << "\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-11s %14s %14s %14s  %s\n", "model", "initial [m]", "perigee [m]", "final [m]",
                "flags");
  os << buf;
  for (const auto& m : result.models) {
    const auto& s = m.summary;
    std::snprintf(buf, sizeof buf, "%-11s %14.6g %14.6g %14.6g  %s\n", std::string(model_name(m.model)).c_str(),
                  s.initial_km * 1e3, s.perigee_max_km * 1e3, s.final_km * 1e3,
                  flag_string(m.trajectory.flags).c_str());
    os << buf;
  }
  return os.str();
}

void write_outputs(const ScenarioResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error(dir.string() + ": " + ec.message());
  emit_csv(series_rows(result), dir / (result.config.name + "_errors.csv"));
  const auto summary_path = dir / (result.config.name + "_summary.json");
  std::ofstream out(summary_path);
  if (!out) throw std::runtime_error(summary_path.string() + ": " + std::strerror(errno));
  out << summary_json(result).dump(2) << '\n';
  if (!out) throw std::runtime_error(summary_path.string() + ": write failed");
}

}  // namespace flyby::harness
