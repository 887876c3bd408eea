#pragma once

#include "alberich/core/error.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace alberich::acoustics {

using cplx = std::complex<double>;

/// Homogeneous medium at one frequency, as seen by a normally incident
/// longitudinal wave. Time dependence is exp(+i w t): a lossy modulus has a
/// non-negative imaginary part.
struct Medium {
  double density = 0.0;  ///< kg/m^3
  cplx modulus{};        ///< longitudinal (P-wave) modulus, Pa

  void validate() const {
    if (!(density > 0.0)) {
      throw InvalidInput("medium density must be positive");
    }
    if (!(modulus.real() > 0.0) || !(modulus.imag() >= 0.0)) {
      throw InvalidInput("medium modulus must have Re > 0 and Im >= 0");
    }
  }
};

/// Z = sqrt(rho M), principal branch (Re Z > 0).
inline cplx characteristic_impedance(const Medium& m) { return std::sqrt(m.density * m.modulus); }

/// k = w sqrt(rho / M), principal branch: Re k > 0 and Im k <= 0, so the
/// forward wave exp(-i k x) decays in a lossy medium.
inline cplx wavenumber(const Medium& m, double frequency_hz) {
  return 2.0 * std::numbers::pi * frequency_hz * std::sqrt(m.density / m.modulus);
}

struct FluidConstants {
  double density = 0.0;
  double sound_speed = 0.0;

  [[nodiscard]] Medium medium() const { return {density, cplx(density * sound_speed * sound_speed, 0.0)}; }
};

struct SolidConstants {
  double density = 0.0;
  double youngs_pa = 0.0;
  double poisson = 0.0;
  double thickness_m = 0.0;

  [[nodiscard]] Medium medium() const {
    const double m = youngs_pa * (1.0 - poisson) / ((1.0 + poisson) * (1.0 - 2.0 * poisson));
    return {density, cplx(m, 0.0)};
  }
};

/// Fixed media around the coating.
struct Environment {
  FluidConstants water{1000.0, 1480.0};
  FluidConstants air{1.2, 343.0};
  SolidConstants steel{7850.0, 200e9, 0.30, 0.030};
};

} // namespace alberich::acoustics
