#include "harness/thirdbody_demo.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "flyby/errors.hpp"
#include "flyby/propagator.hpp"

namespace flyby::harness {

using nlohmann::json;

void ThirdBodyScenario::validate() const {
  body.validate();
  flyby::validate(state0);
  if (!(mu_b > 0.0)) throw DomainError("perturber mu must be positive");
  if (!(perturber_radius > 0.0)) throw DomainError("perturber radius must be positive");
  if (!(perturber_period > 0.0)) throw DomainError("perturber period must be positive");
  if (jmax < 2) throw DomainError("jmax must be at least 2");
  if (!(t_span > 0.0)) throw DomainError("t_span must be positive");
  if (n_samples < 2) throw DomainError("n_samples must be at least 2");
  integrator.validate();
}

ThirdBodyConfig ThirdBodyScenario::perturber() const {
  return {mu_b, circular_perturber(perturber_radius, 2.0 * kPi / perturber_period, perturber_phase), jmax};
}

std::vector<double> ThirdBodyScenario::time_grid() const {
  std::vector<double> t(static_cast<std::size_t>(n_samples));
  const double step = t_span / (n_samples - 1);
  for (int k = 0; k < n_samples; ++k) t[static_cast<std::size_t>(k)] = step * k;
  t.back() = t_span;
  return t;
}

ThirdBodyScenario thirdbody_from_json(const json& j) {
  ThirdBodyScenario cfg;
  try {
    cfg.name = j.value("name", std::string("thirdbody"));
    const json& b = j.at("body");
    cfg.body = {b.at("mu").get<double>(), b.at("alpha").get<double>(), b.at("j2").get<double>()};
    const auto pos = j.at("state0").at("position").get<std::vector<double>>();
    const auto vel = j.at("state0").at("velocity").get<std::vector<double>>();
    if (pos.size() != 3 || vel.size() != 3) throw DomainError("state0 vectors must have three components");
    cfg.state0 = {{pos[0], pos[1], pos[2]}, {vel[0], vel[1], vel[2]}, 0.0};
    const json& p = j.at("perturber");
    cfg.mu_b = p.at("mu").get<double>();
    cfg.perturber_radius = p.at("radius").get<double>();
    cfg.perturber_period = p.at("period_days").get<double>() * 86400.0;
    cfg.perturber_phase = deg2rad(p.value("phase_deg", 0.0));
    cfg.jmax = j.value("jmax", 2);
    cfg.t_span = j.at("t_span").get<double>();
    cfg.n_samples = j.value("n_samples", 500);
    cfg.output = j.value("output", std::string());
    if (j.contains("integrator")) {
      cfg.integrator.rel_tol = j["integrator"].value("rel_tol", cfg.integrator.rel_tol);
      cfg.integrator.abs_tol = j["integrator"].value("abs_tol", cfg.integrator.abs_tol);
    }
  } catch (const json::exception& ex) {
    throw DomainError(std::string("malformed third-body config: ") + ex.what());
  }
  cfg.validate();
  return cfg;
}

ThirdBodyScenario load_thirdbody(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open third-body config " + path.string());
  json j;
  try {
    in >> j;
    return thirdbody_from_json(j);
  } catch (const std::exception& ex) {
    throw DomainError(path.string() + ": " + ex.what());
  }
}

ThirdBodyResult run_thirdbody(const ThirdBodyScenario& cfg) {
  try {
    cfg.validate();
  } catch (const std::exception& ex) {
    throw StageError("config", ex.what());
  }
  ThirdBodyResult out;
  out.config = cfg;
  const auto grid = cfg.time_grid();
  const ThirdBodyConfig tb = cfg.perturber();

  auto numeric = [&](const std::string& stage, auto&& fn) {
    try {
      return fn();
    } catch (const IntegrationError& ex) {
      throw StageError(stage, ex.what(), ex.time());
    } catch (const std::exception& ex) {
      throw StageError(stage, ex.what());
    }
  };

  out.exact = numeric("thirdbody:exact",
                      [&] { return integrate_third_body(cfg.state0, grid, cfg.body, tb, ThirdBodyMode::exact,
                                                        cfg.integrator); });
  const Trajectory p2 = numeric("thirdbody:p2", [&] {
    return integrate_third_body(cfg.state0, grid, cfg.body, tb, ThirdBodyMode::p2_only, cfg.integrator);
  });
  const Trajectory main = numeric("thirdbody:main-problem",
                                  [&] { return integrate_main_problem(cfg.state0, grid, cfg.body, cfg.integrator); });
  const Trajectory analytic =
      numeric("thirdbody:second", [&] { return propagate(ModelKind::second, cfg.state0, grid, cfg.body); });

  out.rho.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out.rho.push_back(norm(out.exact.states[k].position) / norm(tb.r_b(grid[k])));
  }
  out.series.push_back({"p2-only", rss_error(p2, out.exact)});
  out.series.push_back({"main-problem", rss_error(main, out.exact)});
  out.series.push_back({"second", rss_error(analytic, out.exact)});
  return out;
}

std::vector<SeriesRow> series_rows(const ThirdBodyResult& result) {
  std::vector<SeriesRow> rows;
  for (std::size_t k = 0; k < result.exact.times.size(); ++k) {
    for (const auto& s : result.series) rows.push_back({result.exact.times[k], s.label, s.rss_km[k], "-"});
  }
  return rows;
}

std::string summary_table(const ThirdBodyResult& result) {
  std::ostringstream os;
  const double rho_max = *std::max_element(result.rho.begin(), result.rho.end());
  char buf[160];
  std::snprintf(buf, sizeof buf, "scenario %s: %zu samples, max r/r_B = %.3e\n", result.config.name.c_str(),
                result.exact.times.size(), rho_max);
  os << buf;
  std::snprintf(buf, sizeof buf, "%-13s %16s %16s\n", "vs exact", "max [km]", "final [km]");
  os << buf;
  for (const auto& s : result.series) {
    const double mx = *std::max_element(s.rss_km.begin(), s.rss_km.end());
    std::snprintf(buf, sizeof buf, "%-13s %16.6e %16.6e\n", s.label.c_str(), mx, s.rss_km.back());
    os << buf;
  }
  return os.str();
}

}  // namespace flyby::harness
