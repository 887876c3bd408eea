#pragma once

#include "alberich/core/error.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace alberich::rheology {

struct ModulusPoint {
  double frequency_hz = 0.0;
  double storage_pa = 0.0;
  double loss_pa = 0.0;
};

/// One DMA frequency sweep at a fixed temperature.
struct IsothermalSweep {
  double temperature_c = 0.0;
  std::vector<ModulusPoint> points;

  void validate() const {
    if (points.empty()) {
      throw InvalidInput("sweep at " + std::to_string(temperature_c) + " C has no points");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      if (!(p.frequency_hz > 0.0) || (i > 0 && !(p.frequency_hz > points[i - 1].frequency_hz))) {
        throw InvalidInput("sweep at " + std::to_string(temperature_c) +
                           " C: frequencies must be positive and strictly increasing");
      }
      if (!(p.storage_pa > 0.0) || !(p.loss_pa >= 0.0)) {
        throw InvalidInput("sweep at " + std::to_string(temperature_c) +
                           " C: storage must be > 0 and loss >= 0");
      }
    }
  }
};

struct ShiftEntry {
  double temperature_c = 0.0;
  double log10_horizontal = 0.0; ///< added to log10(frequency)
  double log10_vertical = 0.0;   ///< added to log10(modulus)
};

struct ShiftFactors {
  double reference_temperature_c = 0.0;
  std::vector<ShiftEntry> entries; ///< sorted by temperature, one per input sweep
};

struct MasterPoint {
  double log10_frequency = 0.0;
  double storage_pa = 0.0;
  double loss_pa = 0.0;
};

/// Quartic in x with ascending coefficients c0 + c1 x + ... + c4 x^4.
using Quartic = std::array<double, 5>;

inline double evaluate(const Quartic& c, double x) noexcept {
  double y = c[4];
  for (int i = 3; i >= 0; --i) {
    y = y * x + c[static_cast<std::size_t>(i)];
  }
  return y;
}

/// Frequency-dependent complex modulus at a reference temperature.
///
/// Storage and loss are each represented by a quartic fit of log10(modulus)
/// against log10(frequency); evaluation exponentiates so both stay positive.
struct MasterCurve {
  double reference_temperature_c = 0.0;
  std::vector<MasterPoint> points;
  Quartic poly_storage{};
  Quartic poly_loss{};
  bool lossless = false; ///< no positive loss data; loss evaluates to 0
  double log10_freq_min = 0.0;
  double log10_freq_max = 0.0;
  double max_residual_storage = 0.0; ///< max |log10 fit - log10 data|
  double max_residual_loss = 0.0;

  [[nodiscard]] bool covers(double frequency_hz) const noexcept {
    const double x = std::log10(frequency_hz);
    return x >= log10_freq_min && x <= log10_freq_max;
  }

  /// Complex modulus E' + iE'' at a frequency; extrapolates outside the fitted range.
  [[nodiscard]] std::complex<double> modulus(double frequency_hz) const {
    if (!(frequency_hz > 0.0)) {
      throw InvalidInput("modulus requested at non-positive frequency");
    }
    const double x = std::log10(frequency_hz);
    const double storage = std::pow(10.0, evaluate(poly_storage, x));
    const double loss = lossless ? 0.0 : std::pow(10.0, evaluate(poly_loss, x));
    return {storage, loss};
  }
};

struct ModulusSample {
  std::complex<double> value;
  bool extrapolated = false;
};

/// Evaluates the master curve, flagging (not rejecting) extrapolation.
inline ModulusSample eval_modulus(const MasterCurve& curve, double frequency_hz) {
  return {curve.modulus(frequency_hz), !curve.covers(frequency_hz)};
}

} // namespace alberich::rheology
