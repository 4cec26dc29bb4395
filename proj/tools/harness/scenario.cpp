#include "harness/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "flyby/errors.hpp"

namespace flyby::harness {

using nlohmann::json;

void ScenarioConfig::validate() const {
  body.validate();
  if (!(elements0.e > 1.0)) {
    throw NotHyperbolicError("hyperbolic regime required: scenario '" + name + "' has e = " +
                             std::to_string(elements0.e));
  }
  if (!(elements0.a > 0.0)) throw DomainError("semi-transverse axis must be positive");
  if (!(t_span > 0.0)) throw DomainError("t_span must be positive");
  if (n_samples < 2) throw DomainError("n_samples must be at least 2");
  if (!(perigee_window > 0.0)) throw DomainError("perigee_window must be positive");
  if (models.empty()) throw DomainError("scenario requests no models");
  integrator.validate();
}

HyperbolicElements ScenarioConfig::elements_rad() const {
  return {elements0.a,           elements0.e,           deg2rad(elements0.i),
          deg2rad(elements0.raan), deg2rad(elements0.argp), deg2rad(elements0.M)};
}

std::vector<double> ScenarioConfig::time_grid() const {
  std::vector<double> t(static_cast<std::size_t>(n_samples));
  const double step = t_span / (n_samples - 1);
  for (int k = 0; k < n_samples; ++k) t[static_cast<std::size_t>(k)] = step * k;
  t.back() = t_span;
  return t;
}

CartesianState ScenarioConfig::initial_state() const {
  const HyperbolicDelaunay d = delaunay_from_elements(elements_rad(), body);
  return polar_to_cartesian(to_polar(d, body), 0.0);
}

std::vector<ModelKind> parse_model_list(const std::string& csv) {
  std::vector<ModelKind> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto m = parse_model(item);
    if (!m) throw DomainError("unknown model '" + item + "'");
    out.push_back(*m);
  }
  return out;
}

ScenarioConfig scenario_from_json(const json& j) {
  ScenarioConfig cfg;
  try {
    cfg.name = j.value("name", std::string("scenario"));
    cfg.description = j.value("description", std::string());
    const json& b = j.at("body");
    cfg.body = {b.at("mu").get<double>(), b.at("alpha").get<double>(), b.at("j2").get<double>()};
    const json& el = j.at("elements0");
    cfg.elements0 = {el.at("a").get<double>(),    el.at("e").get<double>(),    el.at("I").get<double>(),
                     el.at("raan").get<double>(), el.at("argp").get<double>(), el.at("M").get<double>()};
    cfg.t_span = j.at("t_span").get<double>();
    cfg.n_samples = j.value("n_samples", 500);
    if (j.contains("models")) {
      for (const auto& m : j.at("models")) {
        const auto kind = parse_model(m.get<std::string>());
        if (!kind) throw DomainError("unknown model '" + m.get<std::string>() + "'");
        cfg.models.push_back(*kind);
      }
    } else {
      cfg.models = all_models();
    }
    cfg.output = j.value("output", std::string());
    cfg.perigee_window = j.value("perigee_window", 1800.0);
    if (j.contains("integrator")) {
      const json& in = j.at("integrator");
      cfg.integrator.rel_tol = in.value("rel_tol", cfg.integrator.rel_tol);
      cfg.integrator.abs_tol = in.value("abs_tol", cfg.integrator.abs_tol);
      cfg.integrator.max_step = in.value("max_step", cfg.integrator.max_step);
    }
    const std::string upgrade = j.value("first_plus", std::string("both"));
    if (upgrade == "both") {
      cfg.first_plus = FirstPlusUpgrade::both;
    } else if (upgrade == "mean-motion") {
      cfg.first_plus = FirstPlusUpgrade::mean_motion_only;
    } else if (upgrade == "torsion-inverse") {
      cfg.first_plus = FirstPlusUpgrade::torsion_inverse_only;
    } else {
      throw DomainError("first_plus must be one of both, mean-motion, torsion-inverse");
    }
  } catch (const json::exception& ex) {
    throw DomainError(std::string("malformed scenario config: ") + ex.what());
  }
  cfg.validate();
  return cfg;
}

json scenario_to_json(const ScenarioConfig& cfg) {
  json models = json::array();
  for (ModelKind m : cfg.models) models.push_back(std::string(model_name(m)));
  const char* upgrade = cfg.first_plus == FirstPlusUpgrade::both               ? "both"
                        : cfg.first_plus == FirstPlusUpgrade::mean_motion_only ? "mean-motion"
                                                                               : "torsion-inverse";
  return {{"name", cfg.name},
          {"description", cfg.description},
          {"body", {{"mu", cfg.body.mu}, {"alpha", cfg.body.alpha}, {"j2", cfg.body.j2}}},
          {"elements0",
           {{"a", cfg.elements0.a},
            {"e", cfg.elements0.e},
            {"I", cfg.elements0.i},
            {"raan", cfg.elements0.raan},
            {"argp", cfg.elements0.argp},
            {"M", cfg.elements0.M}}},
          {"t_span", cfg.t_span},
          {"n_samples", cfg.n_samples},
          {"models", models},
          {"output", cfg.output},
          {"perigee_window", cfg.perigee_window},
          {"integrator",
           {{"rel_tol", cfg.integrator.rel_tol},
            {"abs_tol", cfg.integrator.abs_tol},
            {"max_step", cfg.integrator.max_step}}},
          {"first_plus", upgrade}};
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open scenario config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw DomainError(path.string() + ": " + ex.what());
  }
  try {
    return scenario_from_json(j);
  } catch (const DomainError& ex) {
    throw DomainError(path.string() + ": " + ex.what());
  }
}

}  // namespace flyby::harness
