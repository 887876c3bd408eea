#pragma once

#include "alberich/core/random.hpp"
#include "alberich/surrogate/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fixtures {

using alberich::Rng;
using alberich::surrogate::Gradient;
using alberich::surrogate::Mlp;

/// Random architecture 11 -> (1..3 hidden of 2..12) -> 1 with N(0, 1) weights.
inline Mlp random_net(Rng& rng) {
  std::vector<int> sizes{11};
  const int hidden = 1 + static_cast<int>(rng.below(3));
  for (int i = 0; i < hidden; ++i) {
    sizes.push_back(2 + static_cast<int>(rng.below(11)));
  }
  sizes.push_back(1);
  Mlp net(sizes);
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    for (Eigen::Index k = 0; k < net.weights()[l].size(); ++k) {
      net.weights()[l].data()[k] = rng.normal();
    }
    for (Eigen::Index k = 0; k < net.biases()[l].size(); ++k) {
      net.biases()[l](k) = 0.5 * rng.normal();
    }
  }
  return net;
}

struct Batch {
  Eigen::MatrixXd x;
  Eigen::MatrixXd y;
};

inline Batch random_batch(Rng& rng, int rows) {
  Batch b{Eigen::MatrixXd(11, rows), Eigen::MatrixXd(1, rows)};
  for (Eigen::Index k = 0; k < b.x.size(); ++k) {
    b.x.data()[k] = rng.uniform();
  }
  for (Eigen::Index k = 0; k < b.y.size(); ++k) {
    b.y.data()[k] = rng.uniform();
  }
  return b;
}

/// Central-difference estimate of every parameter's derivative of the batch MSE.
inline Gradient finite_difference(const Mlp& net, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double h) {
  Gradient g = Gradient::zeros_like(net);
  Mlp probe = net;
  auto loss = [&] { return (probe.forward_batch(x) - y).array().square().mean(); };
  auto visit = [&](double& p, double& out) {
    const double saved = p;
    p = saved + h;
    const double up = loss();
    p = saved - h;
    const double down = loss();
    p = saved;
    out = (up - down) / (2.0 * h);
  };
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    for (Eigen::Index k = 0; k < probe.weights()[l].size(); ++k) {
      visit(probe.weights()[l].data()[k], g.weights[l].data()[k]);
    }
    for (Eigen::Index k = 0; k < probe.biases()[l].size(); ++k) {
      visit(probe.biases()[l].data()[k], g.biases[l].data()[k]);
    }
  }
  return g;
}

inline double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Largest component-wise relative error between two gradients.
inline double max_relative_error(const Gradient& a, const Gradient& b) {
  double worst = 0.0;
  for (std::size_t l = 0; l < a.weights.size(); ++l) {
    for (Eigen::Index k = 0; k < a.weights[l].size(); ++k) {
      worst = std::max(worst, relative_error(a.weights[l].data()[k], b.weights[l].data()[k]));
    }
    for (Eigen::Index k = 0; k < a.biases[l].size(); ++k) {
      worst = std::max(worst, relative_error(a.biases[l].data()[k], b.biases[l].data()[k]));
    }
  }
  return worst;
}

} // namespace fixtures
