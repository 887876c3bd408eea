#pragma once

#include "alberich/acoustics/media.hpp"
#include "alberich/core/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace alberich::acoustics {

struct Layer {
  Medium medium;
  double thickness_m = 0.0;
};

/// Layers between two semi-infinite fluids, ordered from the incidence side.
struct LayerStack {
  Medium front;
  std::vector<Layer> layers;
  Medium back;
};

/// Pressure/normal-velocity two-port of one layer:
///   [p, v]_in = [[cos kd, i Z sin kd], [i sin kd / Z, cos kd]] [p, v]_out
inline Eigen::Matrix2cd layer_matrix(const Medium& medium, double thickness_m, double frequency_hz) {
  if (!(frequency_hz > 0.0)) {
    throw InvalidInput("layer_matrix needs a positive frequency");
  }
  if (!(thickness_m >= 0.0)) {
    throw InvalidInput("layer thickness must be non-negative");
  }
  const cplx kd = wavenumber(medium, frequency_hz) * thickness_m;
  const cplx z = characteristic_impedance(medium);
  const cplx c = std::cos(kd);
  const cplx s = std::sin(kd);
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd t;
  t << c, i * z * s, i * s / z, c;
  return t;
}

struct StackSolution {
  cplx reflection{};   ///< reflected / incident pressure at the front face
  cplx transmission{}; ///< transmitted / incident pressure at the back face
  double R = 0.0;      ///< power reflection
  double T = 0.0;      ///< power transmission (intensity flux ratio)
  double A = 0.0;      ///< absorption, 1 - R - T
};

/// Applies half-space impedances to a chained two-port.
inline StackSolution close_stack(const Eigen::Matrix2cd& total, cplx z_front, cplx z_back) {
  const cplx z_in = (total(0, 0) * z_back + total(0, 1)) / (total(1, 0) * z_back + total(1, 1));
  StackSolution s;
  s.reflection = (z_in - z_front) / (z_in + z_front);
  const cplx p_front = 1.0 + s.reflection;
  s.transmission = p_front / (total(0, 0) + total(0, 1) / z_back);

  s.R = std::norm(s.reflection);
  s.T = std::norm(s.transmission) * (1.0 / z_back).real() / (1.0 / z_front).real();
  s.A = 1.0 - s.R - s.T;
  if (s.A < 0.0 && s.A > -1e-12) {
    s.A = 0.0;
  }
  return s;
}

/// Normal-incidence plane-wave solution of a layered stack at one frequency.
inline StackSolution solve_stack(const LayerStack& stack, double frequency_hz) {
  stack.front.validate();
  stack.back.validate();
  Eigen::Matrix2cd total = Eigen::Matrix2cd::Identity();
  for (const auto& layer : stack.layers) {
    layer.medium.validate();
    total = total * layer_matrix(layer.medium, layer.thickness_m, frequency_hz);
  }
  return close_stack(total, characteristic_impedance(stack.front), characteristic_impedance(stack.back));
}

} // namespace alberich::acoustics
