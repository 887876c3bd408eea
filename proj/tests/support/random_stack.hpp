#pragma once

#include "alberich/acoustics/transfer_matrix.hpp"
#include "alberich/core/random.hpp"

#include <cmath>

namespace fixtures {

using namespace alberich::acoustics;

inline Medium random_medium(alberich::Rng& rng, double max_loss_ratio) {
  const double density = std::pow(10.0, rng.uniform(2.0, 4.0));
  const double storage = std::pow(10.0, rng.uniform(6.0, 11.0));
  return {density, cplx(storage, storage * rng.uniform(0.0, max_loss_ratio))};
}

/// Random fluid/solid layers between random lossless half-spaces.
inline LayerStack random_stack(alberich::Rng& rng, int layers, double max_loss_ratio = 0.5) {
  LayerStack s;
  s.front = random_medium(rng, 0.0);
  s.back = random_medium(rng, 0.0);
  for (int i = 0; i < layers; ++i) {
    s.layers.push_back({random_medium(rng, max_loss_ratio), rng.uniform(0.0, 0.1)});
  }
  return s;
}

inline double random_frequency(alberich::Rng& rng) { return std::pow(10.0, rng.uniform(1.0, 4.0)); }

} // namespace fixtures
