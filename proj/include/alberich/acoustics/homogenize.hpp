#pragma once

#include "alberich/acoustics/media.hpp"
#include "alberich/core/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace alberich::acoustics {

/// Constants of the void-layer effective-medium closure. These are model
/// choices for a 1D stand-in of explicit cylindrical voids, not measured values.
struct VoidLayerClosure {
  double resonance_stiffness = 4.0; ///< w0^2 = resonance_stiffness * Re G / (rho r^2)
  double radiative_damping = 1.0;   ///< delta_rad = radiative_damping * phi
  double max_fill_fraction = 0.9;   ///< homogenisation rejected at or above this fill
  int voids_per_layer = 2;
};

/// Matrix properties at one frequency.
struct MatrixSample {
  double density = 0.0;
  cplx longitudinal{};
  cplx shear{};

  [[nodiscard]] Medium medium() const { return {density, longitudinal}; }
};

/// Area fraction of a void layer: n pi r^2 / (h * 2r).
inline double fill_fraction(double void_radius, int n_voids, double cell_height) noexcept {
  return n_voids * std::numbers::pi * void_radius * void_radius / (cell_height * 2.0 * void_radius);
}

/// Effective medium for a layer of cylindrical voids in a viscoelastic matrix.
///
///   rho_eff = (1 - phi) rho
///   M_eff   = M (1 - phi) / (1 + phi L),  L = w0^2 / (w0^2 - w^2 + i gamma w)
///   w0^2    = 4 Re G / (rho r^2),         gamma = w0 (Im G / Re G + phi)
///
/// L is the monopole (breathing) response of a void; it is 1 in the static
/// limit and carries the resonance that dominates low-frequency absorption.
inline Medium homogenize_void_layer(const MatrixSample& matrix, double void_radius_m, int n_voids,
                                    double cell_height_m, double frequency_hz,
                                    const VoidLayerClosure& closure = {}) {
  if (!(void_radius_m >= 0.0) || n_voids < 0 || !(cell_height_m > 0.0) || !(frequency_hz >= 0.0)) {
    throw InvalidInput("homogenize_void_layer: invalid geometry or frequency");
  }
  if (void_radius_m == 0.0 || n_voids == 0) {
    return matrix.medium();
  }
  const double phi = fill_fraction(void_radius_m, n_voids, cell_height_m);
  if (phi >= closure.max_fill_fraction) {
    throw InfeasibleGeometry("void fill fraction " + std::to_string(phi) + " >= " +
                             std::to_string(closure.max_fill_fraction));
  }
  const double w = 2.0 * std::numbers::pi * frequency_hz;
  const double w0_sq = closure.resonance_stiffness * matrix.shear.real() /
                       (matrix.density * void_radius_m * void_radius_m);
  const double gamma = std::sqrt(w0_sq) * (matrix.shear.imag() / matrix.shear.real() +
                                           closure.radiative_damping * phi);
  const cplx lorentz = w0_sq / cplx(w0_sq - w * w, gamma * w);
  return {(1.0 - phi) * matrix.density, matrix.longitudinal * (1.0 - phi) / (1.0 + phi * lorentz)};
}

} // namespace alberich::acoustics
