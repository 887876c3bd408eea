#pragma once

#include "alberich/core/error.hpp"
#include "alberich/surrogate/train.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <string>
#include <vector>

namespace alberich::surrogate {

namespace detail {

inline nlohmann::json metrics_json(const Evaluation& e) {
  return {{"mape_percent", e.mape.percent},
          {"mape_rows_included", e.mape.included},
          {"mape_rows_excluded", e.mape.excluded},
          {"pearson_r", e.pearson},
          {"mse", e.mse}};
}

inline Evaluation metrics_from_json(const nlohmann::json& j) {
  Evaluation e;
  e.mape.percent = j.at("mape_percent").get<double>();
  e.mape.included = j.at("mape_rows_included").get<std::size_t>();
  e.mape.excluded = j.at("mape_rows_excluded").get<std::size_t>();
  e.pearson = j.at("pearson_r").get<double>();
  e.mse = j.at("mse").get<double>();
  return e;
}

} // namespace detail

inline nlohmann::json train_config_json(const TrainConfig& c) {
  return {{"learning_rate", c.learning_rate}, {"batch_size", c.batch_size}, {"epochs", c.epochs},
          {"beta1", c.beta1},                 {"beta2", c.beta2},           {"epsilon", c.epsilon},
          {"seed", c.seed},                   {"hidden_layers", c.hidden_layers}};
}

inline TrainConfig train_config_from_json(const nlohmann::json& j, TrainConfig c = {}) {
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.epochs = j.value("epochs", c.epochs);
  c.beta1 = j.value("beta1", c.beta1);
  c.beta2 = j.value("beta2", c.beta2);
  c.epsilon = j.value("epsilon", c.epsilon);
  c.seed = j.value("seed", c.seed);
  c.hidden_layers = j.value("hidden_layers", c.hidden_layers);
  return c;
}

/// Weights are stored row-major per layer: weights[l][i * cols + j] = W_l(i, j).
inline nlohmann::json to_json(const SurrogateModel& m) {
  nlohmann::json weights = nlohmann::json::array();
  nlohmann::json biases = nlohmann::json::array();
  for (std::size_t l = 0; l < m.net.layer_count(); ++l) {
    const auto& w = m.net.weights()[l];
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(w.size()));
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index k = 0; k < w.cols(); ++k) {
        flat.push_back(w(i, k));
      }
    }
    weights.push_back(flat);
    const auto& b = m.net.biases()[l];
    biases.push_back(std::vector<double>(b.data(), b.data() + b.size()));
  }
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& r : m.trace) {
    trace.push_back({r.epoch, r.train_mse, r.validation_mse});
  }
  return {{"material", m.material},
          {"layer_sizes", m.net.layer_sizes()},
          {"activation", "sigmoid"},
          {"weights", weights},
          {"biases", biases},
          {"normalizer",
           {{"lower", m.normalizer.lower}, {"upper", m.normalizer.upper}, {"log_frequency", m.normalizer.log_frequency}}},
          {"training", train_config_json(m.config)},
          {"loss_trace", trace},
          {"metrics", {{"test", detail::metrics_json(m.test_metrics)},
                       {"validation", detail::metrics_json(m.validation_metrics)}}}};
}

inline SurrogateModel model_from_json(const nlohmann::json& j) {
  try {
    SurrogateModel m;
    m.material = j.at("material").get<std::string>();
    m.net = Mlp(j.at("layer_sizes").get<std::vector<int>>());
    const auto& w = j.at("weights");
    const auto& b = j.at("biases");
    if (w.size() != m.net.layer_count() || b.size() != m.net.layer_count()) {
      throw ConfigError("model has " + std::to_string(w.size()) + " weight layers, expected " +
                        std::to_string(m.net.layer_count()));
    }
    for (std::size_t l = 0; l < m.net.layer_count(); ++l) {
      auto& wl = m.net.weights()[l];
      auto& bl = m.net.biases()[l];
      const auto flat = w[l].get<std::vector<double>>();
      const auto bias = b[l].get<std::vector<double>>();
      if (flat.size() != static_cast<std::size_t>(wl.size()) || bias.size() != static_cast<std::size_t>(bl.size())) {
        throw ConfigError("model layer " + std::to_string(l) + " has inconsistent shape");
      }
      for (Eigen::Index i = 0; i < wl.rows(); ++i) {
        for (Eigen::Index k = 0; k < wl.cols(); ++k) {
          wl(i, k) = flat[static_cast<std::size_t>(i * wl.cols() + k)];
        }
      }
      for (Eigen::Index i = 0; i < bl.size(); ++i) {
        bl(i) = bias[static_cast<std::size_t>(i)];
      }
    }
    const auto& n = j.at("normalizer");
    m.normalizer.lower = n.at("lower").get<RawInput>();
    m.normalizer.upper = n.at("upper").get<RawInput>();
    m.normalizer.log_frequency = n.at("log_frequency").get<bool>();
    m.normalizer.validate();
    if (m.net.input_size() != static_cast<int>(input_dimension) || m.net.output_size() != 1) {
      throw ConfigError("model must map 11 inputs to 1 output");
    }
    m.config = train_config_from_json(j.at("training"));
    for (const auto& r : j.value("loss_trace", nlohmann::json::array())) {
      m.trace.push_back({r.at(0).get<int>(), r.at(1).get<double>(), r.at(2).get<double>()});
    }
    if (j.contains("metrics")) {
      m.test_metrics = detail::metrics_from_json(j.at("metrics").at("test"));
      m.validation_metrics = detail::metrics_from_json(j.at("metrics").at("validation"));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed model file: ") + e.what());
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("invalid model file: ") + e.what());
  }
}

inline SurrogateModel read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return model_from_json(j);
}

} // namespace alberich::surrogate
