#pragma once

#include "alberich/acoustics/unit_cell.hpp"
#include "alberich/core/error.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstddef>
#include <span>

namespace alberich::surrogate {

inline constexpr std::size_t input_dimension = acoustics::UnitCell::dimension + 1;

using RawInput = std::array<double, input_dimension>;

inline RawInput make_input(const acoustics::UnitCell& cell, double frequency_hz) noexcept {
  RawInput x{};
  const auto g = cell.to_array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    x[i] = g[i];
  }
  x[input_dimension - 1] = frequency_hz;
  return x;
}

/// Min-max scaling of (10 geometry values in mm, frequency in Hz) to [0, 1].
/// Frequency is scaled in log10 when log_frequency is set.
struct Normalizer {
  RawInput lower{};
  RawInput upper{};
  bool log_frequency = true;

  static Normalizer for_design_space(double f_lo_hz = 10.0, double f_hi_hz = 10000.0, bool log_frequency = true) {
    Normalizer n;
    for (std::size_t i = 0; i + 1 < input_dimension; ++i) {
      n.lower[i] = acoustics::lower_bounds[i];
      n.upper[i] = acoustics::upper_bounds[i];
    }
    n.lower[input_dimension - 1] = f_lo_hz;
    n.upper[input_dimension - 1] = f_hi_hz;
    n.log_frequency = log_frequency;
    n.validate();
    return n;
  }

  void validate() const {
    for (std::size_t i = 0; i < input_dimension; ++i) {
      if (!(upper[i] > lower[i])) {
        throw InvalidInput("normalizer bound " + std::to_string(i) + " has upper <= lower");
      }
    }
    if (log_frequency && !(lower[input_dimension - 1] > 0.0)) {
      throw InvalidInput("log frequency scaling needs a positive lower bound");
    }
  }

  [[nodiscard]] double normalize(std::size_t i, double x) const {
    if (i + 1 == input_dimension && log_frequency) {
      const double lo = std::log10(lower[i]);
      return (std::log10(x) - lo) / (std::log10(upper[i]) - lo);
    }
    return (x - lower[i]) / (upper[i] - lower[i]);
  }

  [[nodiscard]] double denormalize(std::size_t i, double u) const {
    if (i + 1 == input_dimension && log_frequency) {
      const double lo = std::log10(lower[i]);
      return std::pow(10.0, lo + u * (std::log10(upper[i]) - lo));
    }
    return lower[i] + u * (upper[i] - lower[i]);
  }

  [[nodiscard]] Eigen::VectorXd normalize(const RawInput& x) const {
    Eigen::VectorXd u(input_dimension);
    for (std::size_t i = 0; i < input_dimension; ++i) {
      u(static_cast<Eigen::Index>(i)) = normalize(i, x[i]);
    }
    return u;
  }

  [[nodiscard]] RawInput denormalize(const Eigen::VectorXd& u) const {
    if (u.size() != static_cast<Eigen::Index>(input_dimension)) {
      throw InvalidInput("denormalize: wrong input length");
    }
    RawInput x{};
    for (std::size_t i = 0; i < input_dimension; ++i) {
      x[i] = denormalize(i, u(static_cast<Eigen::Index>(i)));
    }
    return x;
  }

  /// Column-per-sample matrix.
  [[nodiscard]] Eigen::MatrixXd normalize_columns(std::span<const RawInput> rows) const {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(input_dimension), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t c = 0; c < rows.size(); ++c) {
      m.col(static_cast<Eigen::Index>(c)) = normalize(rows[c]);
    }
    return m;
  }
};

} // namespace alberich::surrogate
