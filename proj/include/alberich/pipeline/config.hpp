#pragma once

#include "alberich/core/error.hpp"
#include "alberich/inverse/genetic.hpp"
#include "alberich/inverse/objective.hpp"
#include "alberich/inverse/optimize.hpp"
#include "alberich/surrogate/model_io.hpp"
#include "alberich/surrogate/train.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>

namespace alberich::pipeline {

/// Where the coating polymer's modulus comes from.
struct MaterialConfig {
  std::string name = "PU80";
  std::string fixture = "pu80";    ///< synthetic DMA fixture when dma_csv is empty
  std::filesystem::path dma_csv;   ///< measured sweeps (temperature_C,frequency_Hz,storage_Pa,loss_Pa)
  std::filesystem::path master_curve; ///< prebuilt sidecar; overrides fixture and dma_csv
  double reference_temperature_c = 15.0;
  double density = 1026.0;
  double poisson = 0.499;
};

struct SamplingConfig {
  int n_designs = 400;
  int n_frequencies = 375;
  double f_min_hz = 10.0;
  double f_max_hz = 10000.0;
  bool with_backing = true;
  double max_rejection_rate = 0.99;
};

struct ObjectiveConfig {
  double f_min_hz = 10.0;
  double f_max_hz = 10000.0;
  int n_points = 1000;
  inverse::PenaltyConfig penalty;
  double disagreement_threshold = 0.05;
};

struct PathsConfig {
  std::filesystem::path output_dir = "out";
};

struct Config {
  std::uint64_t seed = 2024;
  std::string evaluator = "surrogate";
  MaterialConfig material;
  SamplingConfig sampling;
  surrogate::TrainConfig training;
  inverse::GaConfig ga;
  ObjectiveConfig objective;
  PathsConfig paths;
  std::filesystem::path base_dir = "."; ///< relative paths resolve against this

  [[nodiscard]] std::filesystem::path resolve(const std::filesystem::path& p) const {
    return (p.is_absolute() ? p : base_dir / p).lexically_normal();
  }
  [[nodiscard]] std::filesystem::path output(const std::string& name) const {
    return resolve(paths.output_dir) / name;
  }

  /// Propagates the manifest seed to every stochastic stage.
  void apply_seed(std::uint64_t s) {
    seed = s;
    training.seed = s;
    ga.seed = s;
  }

  void validate() const {
    try {
      training.validate();
      ga.validate();
    } catch (const InvalidInput& e) {
      throw ConfigError(e.what());
    }
    if (sampling.n_designs < 1 || sampling.n_frequencies < 1 || !(sampling.f_min_hz > 0.0) ||
        !(sampling.f_max_hz >= sampling.f_min_hz) || !(sampling.max_rejection_rate > 0.0 && sampling.max_rejection_rate < 1.0)) {
      throw ConfigError("sampling needs n_designs >= 1, n_frequencies >= 1, 0 < f_min <= f_max, rejection limit in (0, 1)");
    }
    if (sampling.f_min_hz < 10.0 || sampling.f_max_hz > 10000.0) {
      throw ConfigError("sampling grid must lie within [10 Hz, 10 kHz]");
    }
    if (objective.n_points < 2 || !(objective.f_min_hz > 0.0) || !(objective.f_max_hz > objective.f_min_hz)) {
      throw ConfigError("objective needs n_points >= 2 and 0 < f_min < f_max");
    }
    if (!(objective.penalty.base >= 0.0) || !(objective.penalty.slope >= 0.0)) {
      throw ConfigError("penalty constants must be non-negative");
    }
    if (evaluator != "surrogate" && evaluator != "solver") {
      throw ConfigError("evaluator must be \"surrogate\" or \"solver\"");
    }
    if (!(material.density > 0.0) || !(material.poisson > 0.0 && material.poisson < 0.5)) {
      throw ConfigError("material density must be positive and Poisson ratio in (0, 0.5)");
    }
  }
};

namespace detail {

inline void reject_unknown(const nlohmann::json& j, const std::string& where, std::initializer_list<const char*> known) {
  if (!j.is_object()) {
    throw ConfigError(where + " must be a JSON object");
  }
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

} // namespace detail

inline Config config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = ".") {
  Config c;
  c.base_dir = base_dir;
  try {
    detail::reject_unknown(j, "config",
                           {"seed", "evaluator", "material", "sampling", "training", "ga", "objective", "paths"});
    for (const char* required : {"material", "sampling", "training", "ga", "objective", "paths"}) {
      if (!j.contains(required)) {
        throw ConfigError(std::string("config is missing the '") + required + "' section");
      }
    }
    c.seed = j.value("seed", c.seed);
    c.evaluator = j.value("evaluator", c.evaluator);

    const auto& m = j.at("material");
    detail::reject_unknown(m, "material",
                           {"name", "fixture", "dma_csv", "master_curve", "reference_temperature_c", "density", "poisson"});
    c.material.name = m.value("name", c.material.name);
    c.material.fixture = m.value("fixture", c.material.fixture);
    c.material.dma_csv = m.value("dma_csv", std::string{});
    c.material.master_curve = m.value("master_curve", std::string{});
    c.material.reference_temperature_c = m.value("reference_temperature_c", c.material.reference_temperature_c);
    c.material.density = m.value("density", c.material.density);
    c.material.poisson = m.value("poisson", c.material.poisson);

    const auto& s = j.at("sampling");
    detail::reject_unknown(s, "sampling",
                           {"n_designs", "n_frequencies", "f_min_hz", "f_max_hz", "with_backing", "max_rejection_rate"});
    c.sampling.n_designs = s.value("n_designs", c.sampling.n_designs);
    c.sampling.n_frequencies = s.value("n_frequencies", c.sampling.n_frequencies);
    c.sampling.f_min_hz = s.value("f_min_hz", c.sampling.f_min_hz);
    c.sampling.f_max_hz = s.value("f_max_hz", c.sampling.f_max_hz);
    c.sampling.with_backing = s.value("with_backing", c.sampling.with_backing);
    c.sampling.max_rejection_rate = s.value("max_rejection_rate", c.sampling.max_rejection_rate);

    const auto& t = j.at("training");
    detail::reject_unknown(t, "training",
                           {"learning_rate", "batch_size", "epochs", "beta1", "beta2", "epsilon", "hidden_layers"});
    c.training = surrogate::train_config_from_json(t);

    const auto& g = j.at("ga");
    detail::reject_unknown(g, "ga",
                           {"population", "generations", "crossover_rate", "blend_alpha", "mutation_rate",
                            "mutation_scale", "elitism", "tournament"});
    c.ga.population = g.value("population", c.ga.population);
    c.ga.generations = g.value("generations", c.ga.generations);
    c.ga.crossover_rate = g.value("crossover_rate", c.ga.crossover_rate);
    c.ga.blend_alpha = g.value("blend_alpha", c.ga.blend_alpha);
    c.ga.mutation_rate = g.value("mutation_rate", c.ga.mutation_rate);
    c.ga.mutation_scale = g.value("mutation_scale", c.ga.mutation_scale);
    c.ga.elitism = g.value("elitism", c.ga.elitism);
    c.ga.tournament = g.value("tournament", c.ga.tournament);

    const auto& o = j.at("objective");
    detail::reject_unknown(o, "objective",
                           {"f_min_hz", "f_max_hz", "n_points", "penalty_base", "penalty_slope", "min_edge_clearance_mm",
                            "disagreement_threshold"});
    c.objective.f_min_hz = o.value("f_min_hz", c.objective.f_min_hz);
    c.objective.f_max_hz = o.value("f_max_hz", c.objective.f_max_hz);
    c.objective.n_points = o.value("n_points", c.objective.n_points);
    c.objective.penalty.base = o.value("penalty_base", c.objective.penalty.base);
    c.objective.penalty.slope = o.value("penalty_slope", c.objective.penalty.slope);
    c.objective.penalty.rules.min_edge_clearance_mm =
        o.value("min_edge_clearance_mm", c.objective.penalty.rules.min_edge_clearance_mm);
    c.objective.disagreement_threshold = o.value("disagreement_threshold", c.objective.disagreement_threshold);

    const auto& p = j.at("paths");
    detail::reject_unknown(p, "paths", {"output_dir"});
    c.paths.output_dir = p.value("output_dir", c.paths.output_dir.string());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.apply_seed(c.seed);
  c.validate();
  return c;
}

inline nlohmann::json to_json(const Config& c) {
  return {{"seed", c.seed},
          {"evaluator", c.evaluator},
          {"material",
           {{"name", c.material.name},
            {"fixture", c.material.fixture},
            {"dma_csv", c.material.dma_csv.generic_string()},
            {"master_curve", c.material.master_curve.generic_string()},
            {"reference_temperature_c", c.material.reference_temperature_c},
            {"density", c.material.density},
            {"poisson", c.material.poisson}}},
          {"sampling",
           {{"n_designs", c.sampling.n_designs},
            {"n_frequencies", c.sampling.n_frequencies},
            {"f_min_hz", c.sampling.f_min_hz},
            {"f_max_hz", c.sampling.f_max_hz},
            {"with_backing", c.sampling.with_backing},
            {"max_rejection_rate", c.sampling.max_rejection_rate}}},
          {"training", [&] {
             auto t = surrogate::train_config_json(c.training);
             t.erase("seed");
             return t;
           }()},
          {"ga",
           {{"population", c.ga.population},
            {"generations", c.ga.generations},
            {"crossover_rate", c.ga.crossover_rate},
            {"blend_alpha", c.ga.blend_alpha},
            {"mutation_rate", c.ga.mutation_rate},
            {"mutation_scale", c.ga.mutation_scale},
            {"elitism", c.ga.elitism},
            {"tournament", c.ga.tournament}}},
          {"objective",
           {{"f_min_hz", c.objective.f_min_hz},
            {"f_max_hz", c.objective.f_max_hz},
            {"n_points", c.objective.n_points},
            {"penalty_base", c.objective.penalty.base},
            {"penalty_slope", c.objective.penalty.slope},
            {"min_edge_clearance_mm", c.objective.penalty.rules.min_edge_clearance_mm},
            {"disagreement_threshold", c.objective.disagreement_threshold}}},
          {"paths", {{"output_dir", c.paths.output_dir.generic_string()}}}};
}

inline Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config " + path.string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return config_from_json(j, path.parent_path().empty() ? "." : path.parent_path());
}

} // namespace alberich::pipeline
