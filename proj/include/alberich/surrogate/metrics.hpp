#pragma once

#include "alberich/core/error.hpp"

#include <cmath>
#include <cstddef>
#include <span>

namespace alberich::surrogate {

struct MapeResult {
  double percent = 0.0;
  std::size_t included = 0;
  std::size_t excluded = 0; ///< rows with |target| <= floor
};

/// Mean absolute percentage error over rows whose |target| exceeds the floor.
inline MapeResult mape(std::span<const double> predictions, std::span<const double> targets, double floor = 1e-3) {
  if (predictions.size() != targets.size()) {
    throw InvalidInput("mape: length mismatch");
  }
  MapeResult r;
  double sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!(std::abs(targets[i]) > floor)) {
      ++r.excluded;
      continue;
    }
    sum += std::abs(predictions[i] - targets[i]) / std::abs(targets[i]);
    ++r.included;
  }
  if (r.included == 0) {
    throw InvalidInput("mape: every row is below the target floor");
  }
  r.percent = 100.0 * sum / static_cast<double>(r.included);
  return r;
}

/// Sample Pearson correlation coefficient.
inline double pearson_r(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw InvalidInput("pearson_r needs two equal-length series of at least 2 values");
  }
  const double n = static_cast<double>(a.size());
  double ma = 0.0;
  double mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) {
    throw InvalidInput("pearson_r: a series has zero variance");
  }
  const double r = sab / std::sqrt(saa * sbb);
  return std::max(-1.0, std::min(1.0, r));
}

} // namespace alberich::surrogate
