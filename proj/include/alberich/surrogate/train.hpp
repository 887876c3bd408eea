#pragma once

#include "alberich/core/error.hpp"
#include "alberich/core/random.hpp"
#include "alberich/surrogate/adam.hpp"
#include "alberich/surrogate/dataset.hpp"
#include "alberich/surrogate/metrics.hpp"
#include "alberich/surrogate/mlp.hpp"
#include "alberich/surrogate/normalizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace alberich::surrogate {

struct TrainConfig {
  double learning_rate = 0.0021;
  int batch_size = 100;
  int epochs = 800;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
  std::vector<int> hidden_layers{200, 200, 200};

  void validate() const {
    if (!(learning_rate > 0.0) || batch_size < 1 || epochs < 1) {
      throw InvalidInput("train config needs learning_rate > 0, batch_size >= 1, epochs >= 1");
    }
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0) || !(epsilon > 0.0)) {
      throw InvalidInput("adam betas must lie in [0, 1) and epsilon must be positive");
    }
    for (int h : hidden_layers) {
      if (h < 1) {
        throw InvalidInput("hidden layer sizes must be positive");
      }
    }
  }

  [[nodiscard]] std::vector<int> layer_sizes(int inputs, int outputs) const {
    std::vector<int> s{inputs};
    s.insert(s.end(), hidden_layers.begin(), hidden_layers.end());
    s.push_back(outputs);
    return s;
  }
};

/// Loss after each epoch; entry 0 is the untrained network.
struct LossRecord {
  int epoch = 0;
  double train_mse = 0.0;
  double validation_mse = 0.0;
};

/// Column matrices of one tagged subset.
struct Subset {
  Eigen::MatrixXd x;
  Eigen::MatrixXd y;

  [[nodiscard]] Eigen::Index size() const noexcept { return x.cols(); }
};

inline Subset gather(const LabeledDataset& data, const Normalizer& norm, const std::vector<std::size_t>& rows) {
  Subset s{Eigen::MatrixXd(static_cast<Eigen::Index>(input_dimension), static_cast<Eigen::Index>(rows.size())),
           Eigen::MatrixXd(1, static_cast<Eigen::Index>(rows.size()))};
  for (std::size_t c = 0; c < rows.size(); ++c) {
    s.x.col(static_cast<Eigen::Index>(c)) = norm.normalize(data.inputs[rows[c]]);
    s.y(0, static_cast<Eigen::Index>(c)) = data.targets[rows[c]];
  }
  return s;
}

struct TrainResult {
  Mlp net;
  std::vector<LossRecord> trace;
};

using EpochCallback = std::function<void(const LossRecord&)>;

/// Mini-batch Adam on MSE with a fresh seeded shuffle each epoch.
/// Throws NumericalError naming the epoch if the loss stops being finite.
inline TrainResult train(Mlp net, const Subset& training, const Subset& validation, const TrainConfig& cfg,
                         const EpochCallback& on_epoch = {}) {
  cfg.validate();
  if (training.size() == 0) {
    throw InvalidInput("training subset is empty");
  }
  Rng shuffle_rng = Rng(cfg.seed).split(streams::shuffle);
  Adam adam(net, {cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.epsilon});
  Gradient grad = Gradient::zeros_like(net);
  BackpropWorkspace ws;

  const Eigen::Index n = training.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Eigen::MatrixXd bx(training.x.rows(), 0);
  Eigen::MatrixXd by(training.y.rows(), 0);

  auto validation_mse = [&] { return validation.size() > 0 ? mse(net, validation.x, validation.y) : 0.0; };
  TrainResult result;
  result.trace.push_back({0, mse(net, training.x, training.y), validation_mse()});
  if (on_epoch) {
    on_epoch(result.trace.back());
  }
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(std::span<Eigen::Index>(order));
    double sum = 0.0;
    for (Eigen::Index start = 0; start < n; start += cfg.batch_size) {
      const Eigen::Index len = std::min<Eigen::Index>(cfg.batch_size, n - start);
      bx.resize(training.x.rows(), len);
      by.resize(training.y.rows(), len);
      for (Eigen::Index c = 0; c < len; ++c) {
        bx.col(c) = training.x.col(order[static_cast<std::size_t>(start + c)]);
        by.col(c) = training.y.col(order[static_cast<std::size_t>(start + c)]);
      }
      const double loss = backprop(net, bx, by, grad, ws);
      if (!std::isfinite(loss)) {
        throw NumericalError("training loss is not finite at epoch " + std::to_string(epoch));
      }
      sum += loss * static_cast<double>(len);
      adam.step(net, grad);
    }
    LossRecord rec{epoch, sum / static_cast<double>(n), validation_mse()};
    if (!std::isfinite(rec.train_mse) || !std::isfinite(rec.validation_mse)) {
      throw NumericalError("training loss is not finite at epoch " + std::to_string(epoch));
    }
    result.trace.push_back(rec);
    if (on_epoch) {
      on_epoch(rec);
    }
  }
  result.net = std::move(net);
  return result;
}

struct Evaluation {
  MapeResult mape;
  double pearson = 0.0;
  double mse = 0.0;
};

inline Evaluation evaluate(const Mlp& net, const Subset& s) {
  const Eigen::MatrixXd pred = net.forward_batch(s.x);
  const std::span<const double> p(pred.data(), static_cast<std::size_t>(pred.size()));
  const std::span<const double> t(s.y.data(), static_cast<std::size_t>(s.y.size()));
  return {mape(p, t), pearson_r(p, t), (pred - s.y).array().square().mean()};
}

struct SurrogateModel {
  std::string material;
  Normalizer normalizer;
  Mlp net;
  TrainConfig config;
  std::vector<LossRecord> trace;
  Evaluation test_metrics;
  Evaluation validation_metrics;

  /// Absorption for one cell over a frequency list.
  [[nodiscard]] std::vector<double> spectrum(const acoustics::UnitCell& cell, std::span<const double> frequencies) const {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(input_dimension), static_cast<Eigen::Index>(frequencies.size()));
    for (std::size_t c = 0; c < frequencies.size(); ++c) {
      x.col(static_cast<Eigen::Index>(c)) = normalizer.normalize(make_input(cell, frequencies[c]));
    }
    const Eigen::MatrixXd y = net.forward_batch(x);
    return {y.data(), y.data() + y.size()};
  }
};

/// Splits must already be tagged. Initialises the network from the config seed.
inline SurrogateModel fit_surrogate(const LabeledDataset& data, const Normalizer& norm, const TrainConfig& cfg,
                                    std::string material, const EpochCallback& on_epoch = {}) {
  if (data.tags.size() != data.size()) {
    throw InvalidInput("dataset has no split tags");
  }
  Rng init = Rng(cfg.seed).split(streams::weight_init);
  Mlp net = Mlp::xavier(cfg.layer_sizes(static_cast<int>(input_dimension), 1), init);
  const Subset tr = gather(data, norm, data.rows_tagged(Split::train));
  const Subset va = gather(data, norm, data.rows_tagged(Split::validation));
  const Subset te = gather(data, norm, data.rows_tagged(Split::test));
  auto result = train(std::move(net), tr, va, cfg, on_epoch);
  SurrogateModel model{std::move(material), norm, std::move(result.net), cfg, std::move(result.trace), {}, {}};
  if (te.size() > 1) {
    model.test_metrics = evaluate(model.net, te);
  }
  if (va.size() > 1) {
    model.validation_metrics = evaluate(model.net, va);
  }
  return model;
}

} // namespace alberich::surrogate
