#include "riskmaps/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace riskmaps {

using nlohmann::json;

EngineConfig calibrated_config() {
  EngineConfig cfg;
  cfg.risk.uncertainty.growth_rate = 0.25;
  cfg.planner.k_u = 1.5e-3;
  cfg.planner.k_o = 2e-4;
  cfg.planner.k_j = 1e-5;
  return cfg;
}

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

json to_json(const EngineConfig& cfg) {
  json j;
  const auto& u = cfg.risk.uncertainty;
  j["uncertainty"] = {{"sigma_min", u.sigma_min},
                      {"growth_rate", u.growth_rate},
                      {"sigma_max_scale", u.sigma_max_scale},
                      {"lateral_sigma", u.lateral_sigma},
                      {"ego_multiplier", u.ego_multiplier},
                      {"other_multiplier", u.other_multiplier}};
  j["survival"] = {{"tau", cfg.risk.survival.tau}};
  j["risk"] = {{"horizon", cfg.risk.horizon}, {"dt", cfg.risk.dt}};
  j["planner"] = {{"accel_grid", cfg.planner.accel_grid},
                  {"duration_grid", cfg.planner.duration_grid},
                  {"k_u", cfg.planner.k_u},
                  {"k_o", cfg.planner.k_o},
                  {"k_j", cfg.planner.k_j}};
  j["estimator"] = {
      {"eps_plan", cfg.estimator.eps_plan},
      {"sigmoid_k", cfg.estimator.sigmoid_k},
      {"gate_threshold", cfg.estimator.gate_threshold},
      {"interpolation",
       cfg.estimator.interpolation == EstimatorConfig::Interpolation::sigmoid
           ? "sigmoid"
           : "linear"}};
  json anchors = json::array();
  for (const auto& [a, w] : cfg.warning.weight.anchors) {
    anchors.push_back({a, w});
  }
  j["warning"] = {{"threshold", cfg.warning.threshold},
                  {"weight_anchors", anchors}};
  j["riskmap"] = {{"v_max", cfg.riskmap.v_max},
                  {"velocity_steps", cfg.riskmap.velocity_steps}};
  return j;
}

EngineConfig from_json(const json& j) {
  EngineConfig cfg;
  if (j.contains("uncertainty")) {
    const auto& ju = j.at("uncertainty");
    auto& u = cfg.risk.uncertainty;
    read(ju, "sigma_min", u.sigma_min);
    read(ju, "growth_rate", u.growth_rate);
    read(ju, "sigma_max_scale", u.sigma_max_scale);
    read(ju, "lateral_sigma", u.lateral_sigma);
    read(ju, "ego_multiplier", u.ego_multiplier);
    read(ju, "other_multiplier", u.other_multiplier);
  }
  if (j.contains("survival")) read(j.at("survival"), "tau", cfg.risk.survival.tau);
  if (j.contains("risk")) {
    read(j.at("risk"), "horizon", cfg.risk.horizon);
    read(j.at("risk"), "dt", cfg.risk.dt);
  }
  if (j.contains("planner")) {
    const auto& jp = j.at("planner");
    read(jp, "accel_grid", cfg.planner.accel_grid);
    read(jp, "duration_grid", cfg.planner.duration_grid);
    read(jp, "k_u", cfg.planner.k_u);
    read(jp, "k_o", cfg.planner.k_o);
    read(jp, "k_j", cfg.planner.k_j);
  }
  if (j.contains("estimator")) {
    const auto& je = j.at("estimator");
    read(je, "eps_plan", cfg.estimator.eps_plan);
    read(je, "sigmoid_k", cfg.estimator.sigmoid_k);
    read(je, "gate_threshold", cfg.estimator.gate_threshold);
    if (je.contains("interpolation")) {
      const std::string mode = je.at("interpolation").get<std::string>();
      if (mode == "sigmoid") {
        cfg.estimator.interpolation = EstimatorConfig::Interpolation::sigmoid;
      } else if (mode == "linear") {
        cfg.estimator.interpolation = EstimatorConfig::Interpolation::linear;
      } else {
        throw std::runtime_error("unknown interpolation mode: " + mode);
      }
    }
  }
  if (j.contains("warning")) {
    const auto& jw = j.at("warning");
    read(jw, "threshold", cfg.warning.threshold);
    if (jw.contains("weight_anchors")) {
      cfg.warning.weight.anchors.clear();
      for (const auto& pair : jw.at("weight_anchors")) {
        cfg.warning.weight.anchors.emplace_back(pair.at(0).get<double>(),
                                                pair.at(1).get<double>());
      }
    }
  }
  if (j.contains("riskmap")) {
    read(j.at("riskmap"), "v_max", cfg.riskmap.v_max);
    read(j.at("riskmap"), "velocity_steps", cfg.riskmap.velocity_steps);
  }
  return cfg;
}

}  // namespace

std::string engine_config_to_json(const EngineConfig& cfg) {
  return to_json(cfg).dump(2) + "\n";
}

EngineConfig engine_config_from_json(const std::string& text) {
  try {
    return from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("invalid engine config: ") + e.what());
  }
}

EngineConfig load_engine_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot read config file: " + file.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    return engine_config_from_json(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(file.string() + ": " + e.what());
  }
}

void save_engine_config(const EngineConfig& cfg,
                        const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) {
    throw std::runtime_error("cannot write config file: " + file.string());
  }
  out << engine_config_to_json(cfg);
}

}  // namespace riskmaps
