#pragma once

#include "alberich/core/error.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>

namespace alberich::acoustics {

struct Peak {
  std::size_t index = 0;
  double frequency_hz = 0.0;
  double value = 0.0;
  double prominence = 0.0;
};

/// Height of sample i above the higher of the two minima reached walking
/// left and right until a strictly higher sample (or the edge) is met.
inline double peak_prominence(std::span<const double> y, std::size_t i) {
  double left_min = y[i];
  for (std::size_t j = i; j-- > 0;) {
    if (y[j] > y[i]) {
      break;
    }
    left_min = std::min(left_min, y[j]);
  }
  double right_min = y[i];
  for (std::size_t j = i + 1; j < y.size(); ++j) {
    if (y[j] > y[i]) {
      break;
    }
    right_min = std::min(right_min, y[j]);
  }
  return y[i] - std::max(left_min, right_min);
}

/// Lowest-frequency interior local maximum of a spectrum whose prominence is at
/// least min_prominence. Plateaus count once, at their first sample.
inline std::optional<Peak> first_peak(std::span<const double> frequencies, std::span<const double> values,
                                      double min_prominence = 0.02) {
  if (frequencies.size() != values.size()) {
    throw InvalidInput("first_peak: frequency and value lengths differ");
  }
  const std::size_t n = values.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(values[i] > values[i - 1])) {
      continue;
    }
    std::size_t k = i;
    while (k + 1 < n && values[k + 1] == values[i]) {
      ++k;
    }
    if (k + 1 >= n || !(values[k + 1] < values[i])) {
      continue;
    }
    const double prom = peak_prominence(values, i);
    if (prom >= min_prominence) {
      return Peak{i, frequencies[i], values[i], prom};
    }
  }
  return std::nullopt;
}

} // namespace alberich::acoustics
