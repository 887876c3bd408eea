#pragma once

#include "alberich/core/error.hpp"
#include "alberich/core/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace alberich::surrogate {

inline Eigen::ArrayXXd sigmoid(const Eigen::ArrayXXd& z) { return (1.0 + (-z).exp()).inverse(); }

/// Keeps a sigmoid output strictly inside (0, 1) after rounding.
inline double open_unit(double y) noexcept {
  return std::clamp(y, std::numeric_limits<double>::denorm_min(), std::nextafter(1.0, 0.0));
}

/// Fully connected network with sigmoid activations on every layer,
/// including the output. Samples are matrix columns.
class Mlp {
public:
  Mlp() = default;

  explicit Mlp(std::vector<int> layer_sizes) : sizes_(std::move(layer_sizes)) {
    if (sizes_.size() < 2) {
      throw InvalidInput("an MLP needs at least an input and an output layer");
    }
    for (int s : sizes_) {
      if (s < 1) {
        throw InvalidInput("layer sizes must be positive");
      }
    }
    for (std::size_t l = 1; l < sizes_.size(); ++l) {
      weights_.push_back(Eigen::MatrixXd::Zero(sizes_[l], sizes_[l - 1]));
      biases_.push_back(Eigen::VectorXd::Zero(sizes_[l]));
    }
  }

  /// Uniform Glorot initialisation, zero biases.
  static Mlp xavier(std::vector<int> layer_sizes, Rng& rng) {
    Mlp net(std::move(layer_sizes));
    for (auto& w : net.weights_) {
      const double a = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        for (Eigen::Index i = 0; i < w.rows(); ++i) {
          w(i, j) = rng.uniform(-a, a);
        }
      }
    }
    return net;
  }

  [[nodiscard]] const std::vector<int>& layer_sizes() const noexcept { return sizes_; }
  [[nodiscard]] std::size_t layer_count() const noexcept { return weights_.size(); }
  [[nodiscard]] std::vector<Eigen::MatrixXd>& weights() noexcept { return weights_; }
  [[nodiscard]] const std::vector<Eigen::MatrixXd>& weights() const noexcept { return weights_; }
  [[nodiscard]] std::vector<Eigen::VectorXd>& biases() noexcept { return biases_; }
  [[nodiscard]] const std::vector<Eigen::VectorXd>& biases() const noexcept { return biases_; }

  [[nodiscard]] std::size_t parameter_count() const noexcept {
    std::size_t n = 0;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
      n += static_cast<std::size_t>(weights_[l].size() + biases_[l].size());
    }
    return n;
  }

  [[nodiscard]] int input_size() const { return sizes_.front(); }
  [[nodiscard]] int output_size() const { return sizes_.back(); }

  void check_input_rows(Eigen::Index rows) const {
    if (sizes_.empty() || rows != sizes_.front()) {
      throw InvalidInput("input has " + std::to_string(rows) + " features, network expects " +
                         std::to_string(sizes_.empty() ? 0 : sizes_.front()));
    }
  }

  /// Outputs for a batch (output_size x n).
  [[nodiscard]] Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& x) const {
    check_input_rows(x.rows());
    Eigen::MatrixXd a = x;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
      Eigen::MatrixXd z = weights_[l] * a;
      z.colwise() += biases_[l];
      a = sigmoid(z.array()).matrix();
    }
    a = a.unaryExpr([](double y) { return open_unit(y); });
    return a;
  }

  [[nodiscard]] double forward(const Eigen::VectorXd& x) const {
    if (output_size() != 1) {
      throw InvalidInput("scalar forward needs a single-output network");
    }
    return forward_batch(x)(0, 0);
  }

private:
  std::vector<int> sizes_;
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
};

/// Same shapes as the network's parameters.
struct Gradient {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  static Gradient zeros_like(const Mlp& net) {
    Gradient g;
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
      g.weights.push_back(Eigen::MatrixXd::Zero(net.weights()[l].rows(), net.weights()[l].cols()));
      g.biases.push_back(Eigen::VectorXd::Zero(net.biases()[l].size()));
    }
    return g;
  }

  [[nodiscard]] bool is_zero() const {
    for (std::size_t l = 0; l < weights.size(); ++l) {
      if ((weights[l].array() != 0.0).any() || (biases[l].array() != 0.0).any()) {
        return false;
      }
    }
    return true;
  }
};

/// Reusable activations for backprop on batches of one size.
struct BackpropWorkspace {
  std::vector<Eigen::MatrixXd> activations;
  std::vector<Eigen::MatrixXd> deltas;
};

/// Exact gradient of the batch mean squared error mean((y_hat - y)^2).
/// Returns the loss; writes the gradient into grad (resized as needed).
inline double backprop(const Mlp& net, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, Gradient& grad,
                       BackpropWorkspace& ws) {
  net.check_input_rows(x.rows());
  if (x.cols() == 0 || y.cols() != x.cols() || y.rows() != net.output_size()) {
    throw InvalidInput("backprop: batch shape mismatch");
  }
  const std::size_t layers = net.layer_count();
  const double n = static_cast<double>(x.cols());
  ws.activations.resize(layers + 1);
  ws.deltas.resize(layers);
  ws.activations[0] = x;
  for (std::size_t l = 0; l < layers; ++l) {
    auto& a = ws.activations[l + 1];
    a.noalias() = net.weights()[l] * ws.activations[l];
    a.colwise() += net.biases()[l];
    a = sigmoid(a.array()).matrix();
  }
  auto& out = ws.activations[layers];
  out = out.unaryExpr([](double v) { return open_unit(v); });

  const Eigen::ArrayXXd err = out.array() - y.array();
  const double loss = err.square().sum() / (n * static_cast<double>(y.rows()));

  ws.deltas[layers - 1] = ((2.0 / (n * static_cast<double>(y.rows()))) * err * out.array() * (1.0 - out.array())).matrix();
  if (grad.weights.size() != layers) {
    grad = Gradient::zeros_like(net);
  }
  for (std::size_t l = layers; l-- > 0;) {
    const auto& delta = ws.deltas[l];
    grad.weights[l].noalias() = delta * ws.activations[l].transpose();
    grad.biases[l] = delta.rowwise().sum();
    if (l > 0) {
      const auto& a = ws.activations[l];
      ws.deltas[l - 1].noalias() = net.weights()[l].transpose() * delta;
      ws.deltas[l - 1].array() *= a.array() * (1.0 - a.array());
    }
  }
  return loss;
}

inline double backprop(const Mlp& net, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, Gradient& grad) {
  BackpropWorkspace ws;
  return backprop(net, x, y, grad, ws);
}

inline double mse(const Mlp& net, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.cols() == 0 || y.cols() != x.cols()) {
    throw InvalidInput("mse: batch shape mismatch");
  }
  return (net.forward_batch(x) - y).array().square().mean();
}

} // namespace alberich::surrogate
