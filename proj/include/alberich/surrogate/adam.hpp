#pragma once

#include "alberich/surrogate/mlp.hpp"

#include <cmath>

namespace alberich::surrogate {

struct AdamConfig {
  double learning_rate = 0.0021;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Adam with bias-corrected first and second moments.
class Adam {
public:
  Adam(const Mlp& net, AdamConfig cfg) : cfg_(cfg), m_(Gradient::zeros_like(net)), v_(Gradient::zeros_like(net)) {}

  void step(Mlp& net, const Gradient& g) {
    ++t_;
    const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
      update(net.weights()[l].array(), g.weights[l].array(), m_.weights[l].array(), v_.weights[l].array(), c1, c2);
      update(net.biases()[l].array(), g.biases[l].array(), m_.biases[l].array(), v_.biases[l].array(), c1, c2);
    }
  }

  [[nodiscard]] long steps() const noexcept { return t_; }

private:
  template <class P, class G, class M>
  void update(P&& p, const G& g, M&& m, M&& v, double c1, double c2) const {
    m = cfg_.beta1 * m + (1.0 - cfg_.beta1) * g;
    v = cfg_.beta2 * v + (1.0 - cfg_.beta2) * g.square();
    p -= cfg_.learning_rate * (m / c1) / ((v / c2).sqrt() + cfg_.epsilon);
  }

  AdamConfig cfg_;
  Gradient m_;
  Gradient v_;
  long t_ = 0;
};

} // namespace alberich::surrogate
