#pragma once

#include "alberich/core/error.hpp"
#include "alberich/rheology/types.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <utility>

namespace alberich::rheology {

/// Poisson ratio from a Young's/shear pair: nu = E / (2G) - 1.
inline double poisson_from_moduli(double youngs_pa, double shear_pa) {
  if (!(youngs_pa > 0.0) || !(shear_pa > 0.0)) {
    throw InvalidInput("poisson_from_moduli needs positive moduli");
  }
  const double nu = youngs_pa / (2.0 * shear_pa) - 1.0;
  if (!(nu > -1.0) || !(nu <= 0.5)) {
    throw InvalidInput("inconsistent modulus pair: E/(2G) - 1 = " + std::to_string(nu) +
                       " is outside (-1, 0.5]");
  }
  return nu;
}

/// Mean Poisson ratio over log-spaced frequencies using storage moduli.
inline double average_poisson(const MasterCurve& youngs, const MasterCurve& shear, double f_lo_hz,
                              double f_hi_hz, int samples = 61) {
  if (samples < 2 || !(f_lo_hz > 0.0) || !(f_hi_hz > f_lo_hz)) {
    throw InvalidInput("average_poisson needs a positive, non-empty frequency band");
  }
  double sum = 0.0;
  const double a = std::log10(f_lo_hz);
  const double b = std::log10(f_hi_hz);
  for (int i = 0; i < samples; ++i) {
    const double f = std::pow(10.0, a + (b - a) * i / (samples - 1));
    sum += poisson_from_moduli(youngs.modulus(f).real(), shear.modulus(f).real());
  }
  return sum / samples;
}

using ModulusFunction = std::function<std::complex<double>(double frequency_hz)>;

/// Isotropic viscoelastic solid: complex Young's modulus vs frequency, a
/// constant real Poisson ratio, and a density.
struct ViscoelasticMaterial {
  std::string name;
  double density = 1026.0;
  double poisson = 0.499;
  ModulusFunction youngs;

  void validate() const {
    if (!(density > 0.0)) {
      throw InvalidInput("material density must be positive");
    }
    if (!(poisson > 0.0 && poisson < 0.5)) {
      throw InvalidInput("material Poisson ratio must lie in (0, 0.5)");
    }
    if (!youngs) {
      throw InvalidInput("material has no Young's modulus");
    }
  }

  [[nodiscard]] std::complex<double> shear(double f) const { return youngs(f) / (2.0 * (1.0 + poisson)); }

  /// P-wave (constrained) modulus E(1-nu)/((1+nu)(1-2nu)).
  [[nodiscard]] std::complex<double> longitudinal(double f) const {
    return youngs(f) * ((1.0 - poisson) / ((1.0 + poisson) * (1.0 - 2.0 * poisson)));
  }
};

inline ViscoelasticMaterial from_master_curve(std::string name, MasterCurve curve,
                                              double density = 1026.0, double poisson = 0.499) {
  ViscoelasticMaterial m{std::move(name), density, poisson,
                         [c = std::move(curve)](double f) { return c.modulus(f); }};
  m.validate();
  return m;
}

inline ViscoelasticMaterial constant_modulus(std::string name, std::complex<double> youngs_pa,
                                             double density = 1026.0, double poisson = 0.499) {
  ViscoelasticMaterial m{std::move(name), density, poisson, [youngs_pa](double) { return youngs_pa; }};
  m.validate();
  return m;
}

/// The same material with its modulus frozen at one frequency.
inline ViscoelasticMaterial frozen_at(const ViscoelasticMaterial& base, double frequency_hz) {
  const auto value = base.youngs(frequency_hz);
  auto m = base;
  m.name += "@" + std::to_string(frequency_hz) + "Hz";
  m.youngs = [value](double) { return value; };
  return m;
}

/// Scales the storage (real) part of the modulus; loss is unchanged.
inline ViscoelasticMaterial with_storage_scale(const ViscoelasticMaterial& base, double factor) {
  auto m = base;
  m.youngs = [inner = base.youngs, factor](double f) {
    const auto e = inner(f);
    return std::complex<double>(factor * e.real(), e.imag());
  };
  return m;
}

} // namespace alberich::rheology
