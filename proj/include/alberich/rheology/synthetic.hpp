#pragma once

#include "alberich/core/error.hpp"
#include "alberich/rheology/types.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

// Synthetic DMA data. No raw polyurethane measurements are available, so the
// PU-like fixtures are generated from a Cole-Cole modulus at the reference
// temperature and a WLF shift law. The PU80-like fixture is calibrated to
// E(100 Hz) = 8.8 + 2.3i MPa; PU65/PU90-like are softer/stiffer variants.

namespace alberich::rheology {

/// E*(w) = E_r + (E_g - E_r) (iw tau)^a / (1 + (iw tau)^a)
struct ColeColeModulus {
  double relaxed_pa = 0.0;
  double glassy_pa = 0.0;
  double log10_tau_s = 0.0;
  double alpha = 0.5;

  [[nodiscard]] std::complex<double> operator()(double frequency_hz) const {
    const double wt = 2.0 * std::numbers::pi * frequency_hz * std::pow(10.0, log10_tau_s);
    const auto s = std::pow(std::complex<double>(0.0, wt), alpha);
    return relaxed_pa + (glassy_pa - relaxed_pa) * s / (1.0 + s);
  }
};

/// log10 aT = -C1 (T - T0) / (C2 + T - T0), relative to the law's own T0.
struct WlfLaw {
  double c1 = 17.44;
  double c2 = 51.6;
  double reference_c = -100.0;

  [[nodiscard]] double log10_shift(double temperature_c) const {
    return -c1 * (temperature_c - reference_c) / (c2 + temperature_c - reference_c);
  }
};

struct DmaFixture {
  std::string name;
  ColeColeModulus youngs_at_reference;
  double reference_c = 15.0;
  WlfLaw wlf{};
  bool vertical_shift = true;
  double poisson = 0.499;
  double poisson_ripple = 4e-4; ///< amplitude of a sin(log10 f) wobble in nu(f)
  std::vector<double> temperatures_c;
  double f_min_hz = 0.1;
  double f_max_hz = 100.0;
  int points_per_sweep = 16;

  /// Generating horizontal shift of a sweep relative to the reference temperature.
  [[nodiscard]] double horizontal_shift(double temperature_c) const {
    return wlf.log10_shift(temperature_c) - wlf.log10_shift(reference_c);
  }

  /// Generating vertical shift log10(T_ref / T) in kelvin, or 0.
  [[nodiscard]] double vertical_shift_at(double temperature_c) const {
    if (!vertical_shift) {
      return 0.0;
    }
    return std::log10((reference_c + 273.15) / (temperature_c + 273.15));
  }

  [[nodiscard]] double poisson_at(double frequency_hz) const {
    return poisson + poisson_ripple * std::sin(std::log10(frequency_hz));
  }

  [[nodiscard]] std::complex<double> shear_at_reference(double frequency_hz) const {
    return youngs_at_reference(frequency_hz) / (2.0 * (1.0 + poisson_at(frequency_hz)));
  }

  [[nodiscard]] std::vector<IsothermalSweep> youngs_sweeps() const {
    return sweeps([this](double f) { return youngs_at_reference(f); });
  }

  [[nodiscard]] std::vector<IsothermalSweep> shear_sweeps() const {
    return sweeps([this](double f) { return shear_at_reference(f); });
  }

private:
  template <class Reference>
  std::vector<IsothermalSweep> sweeps(Reference&& reference) const {
    std::vector<IsothermalSweep> out;
    const double a = std::log10(f_min_hz);
    const double b = std::log10(f_max_hz);
    for (double t : temperatures_c) {
      IsothermalSweep s{t, {}};
      const double reduce = std::pow(10.0, horizontal_shift(t));
      const double scale = std::pow(10.0, -vertical_shift_at(t));
      for (int i = 0; i < points_per_sweep; ++i) {
        const double f = std::pow(10.0, a + (b - a) * i / (points_per_sweep - 1));
        const auto e = reference(f * reduce) * scale;
        s.points.push_back({f, e.real(), e.imag()});
      }
      out.push_back(std::move(s));
    }
    return out;
  }
};

inline std::vector<double> dma_temperatures() {
  std::vector<double> t;
  for (int c = -60; c <= 40; c += 10) {
    t.push_back(c);
  }
  t.push_back(15.0);
  std::sort(t.begin(), t.end());
  return t;
}

inline DmaFixture pu80_like() {
  DmaFixture f;
  f.name = "PU80";
  f.youngs_at_reference = {4.25998327236134e6, 1.0e9, -10.429839511962042, 0.3};
  f.temperatures_c = dma_temperatures();
  return f;
}

inline DmaFixture pu65_like() {
  DmaFixture f;
  f.name = "PU65";
  f.youngs_at_reference = {2.6e6, 0.8e9, -11.3, 0.28};
  f.temperatures_c = dma_temperatures();
  return f;
}

inline DmaFixture pu90_like() {
  DmaFixture f;
  f.name = "PU90";
  f.youngs_at_reference = {14.0e6, 1.5e9, -9.0, 0.32};
  f.temperatures_c = dma_temperatures();
  return f;
}

inline DmaFixture fixture_by_name(const std::string& name) {
  if (name == "PU80" || name == "pu80") {
    return pu80_like();
  }
  if (name == "PU65" || name == "pu65") {
    return pu65_like();
  }
  if (name == "PU90" || name == "pu90") {
    return pu90_like();
  }
  throw InvalidInput("unknown synthetic material '" + name + "' (expected PU65, PU80 or PU90)");
}

} // namespace alberich::rheology
