#pragma once

#include "alberich/acoustics/unit_cell.hpp"
#include "alberich/core/error.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace alberich::inverse {

/// Frequency grid and weights w_i = (N + 1 - i) / N, i = 1..N ascending in
/// frequency, so the lowest frequency carries weight 1 and the highest 1/N.
struct ObjectiveSpec {
  std::vector<double> frequencies;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const noexcept { return frequencies.size(); }

  /// Sum of weights, (N + 1) / 2, formed from the integer numerators.
  [[nodiscard]] double weight_sum() const noexcept {
    const double n = static_cast<double>(size());
    return n * (n + 1.0) / 2.0 / n;
  }
};

/// Evenly spaced band [f_lo, f_hi] with n points (10 Hz steps for the defaults).
inline ObjectiveSpec make_objective_spec(double f_lo_hz = 10.0, double f_hi_hz = 10000.0, std::size_t n = 1000) {
  if (n < 2 || !(f_lo_hz > 0.0) || !(f_hi_hz > f_lo_hz)) {
    throw InvalidInput("objective band needs n >= 2 and 0 < f_lo < f_hi");
  }
  ObjectiveSpec s;
  const double step = (f_hi_hz - f_lo_hz) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    s.frequencies.push_back(i + 1 == n ? f_hi_hz : f_lo_hz + step * static_cast<double>(i));
    s.weights.push_back(static_cast<double>(n - i) / static_cast<double>(n));
  }
  return s;
}

/// sum_i w_i a_i - p. The weighted sum uses integer numerators and a single
/// division so that a_i = 1 reproduces (N + 1) / 2 exactly.
inline double weighted_objective(const ObjectiveSpec& spec, std::span<const double> absorption, double penalty) {
  if (absorption.size() != spec.size()) {
    throw InvalidInput("objective expects " + std::to_string(spec.size()) + " absorption values, got " +
                       std::to_string(absorption.size()));
  }
  if (!(penalty >= 0.0)) {
    throw InvalidInput("penalty must be non-negative");
  }
  const std::size_t n = spec.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += static_cast<double>(n - i) * absorption[i];
  }
  return sum / static_cast<double>(n) - penalty;
}

struct PenaltyConfig {
  double base = 1000.0;
  double slope = 10.0; ///< per mm of total violation depth
  acoustics::ClearanceRules rules;
};

/// 0 for a manufacturable, mappable cell; base + slope * violation depth otherwise.
inline double penalty(const acoustics::UnitCell& cell, const PenaltyConfig& cfg = {}) {
  const double v = acoustics::clearance_violation_mm(cell, cfg.rules);
  return v > 0.0 ? cfg.base + cfg.slope * v : 0.0;
}

} // namespace alberich::inverse
