#pragma once

#include "alberich/acoustics/homogenize.hpp"
#include "alberich/acoustics/media.hpp"
#include "alberich/acoustics/transfer_matrix.hpp"
#include "alberich/acoustics/unit_cell.hpp"
#include "alberich/core/error.hpp"
#include "alberich/rheology/material.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace alberich::acoustics {

struct AcousticResponse {
  std::vector<double> frequencies;
  std::vector<double> R;
  std::vector<double> T;
  std::vector<double> A;

  [[nodiscard]] std::size_t size() const noexcept { return frequencies.size(); }
};

inline MatrixSample sample_material(const rheology::ViscoelasticMaterial& material, double frequency_hz) {
  return {material.density, material.longitudinal(frequency_hz), material.shear(frequency_hz)};
}

/// Builds the layered stack of one unit cell at one frequency (geometry in mm).
///
/// Layers from the water side: front PU, void layer 1, PU spacer, void layer 2,
/// back PU, then the steel plate and an air half-space. Without backing the
/// coating radiates straight into water and no steel is present.
inline LayerStack map_cell_to_stack(const UnitCell& cell, const MatrixSample& matrix, double frequency_hz,
                                    bool with_backing, const Environment& env = {},
                                    const VoidLayerClosure& closure = {}) {
  const auto mm = sublayer_thicknesses_mm(cell);
  for (std::size_t i = 0; i < mm.size(); ++i) {
    if (mm[i] < 0.0) {
      throw InfeasibleGeometry("sublayer " + std::to_string(i) + " has negative thickness " +
                               std::to_string(mm[i]) + " mm");
    }
  }
  constexpr double to_m = 1e-3;
  const double h = cell.h * to_m;
  const Medium pu = matrix.medium();
  LayerStack stack;
  stack.front = env.water.medium();
  stack.layers = {
      {pu, mm[0] * to_m},
      {homogenize_void_layer(matrix, cell.r1 * to_m, closure.voids_per_layer, h, frequency_hz, closure),
       mm[1] * to_m},
      {pu, mm[2] * to_m},
      {homogenize_void_layer(matrix, cell.r2 * to_m, closure.voids_per_layer, h, frequency_hz, closure),
       mm[3] * to_m},
      {pu, mm[4] * to_m},
  };
  if (with_backing) {
    stack.layers.push_back({env.steel.medium(), env.steel.thickness_m});
    stack.back = env.air.medium();
  } else {
    stack.back = env.water.medium();
  }
  return stack;
}

inline void require_positive_sorted(std::span<const double> frequencies) {
  if (frequencies.empty()) {
    throw InvalidInput("frequency list is empty");
  }
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    if (!(frequencies[i] > 0.0) || (i > 0 && !(frequencies[i] > frequencies[i - 1]))) {
      throw InvalidInput("frequencies must be positive and strictly increasing");
    }
  }
}

/// Spectrum evaluator for many cells on one fixed frequency grid. Material
/// samples and the backing plate's matrix are computed once per frequency.
class CoatingSolver {
public:
  CoatingSolver(rheology::ViscoelasticMaterial material, std::vector<double> frequencies, bool with_backing,
                Environment env = {}, VoidLayerClosure closure = {})
      : material_(std::move(material)), frequencies_(std::move(frequencies)), with_backing_(with_backing),
        env_(env), closure_(closure) {
    material_.validate();
    require_positive_sorted(frequencies_);
    samples_.reserve(frequencies_.size());
    backing_.reserve(frequencies_.size());
    for (double f : frequencies_) {
      samples_.push_back(sample_material(material_, f));
      samples_.back().medium().validate();
      backing_.push_back(with_backing_ ? layer_matrix(env_.steel.medium(), env_.steel.thickness_m, f)
                                       : Eigen::Matrix2cd::Identity());
    }
  }

  [[nodiscard]] const std::vector<double>& frequencies() const noexcept { return frequencies_; }
  [[nodiscard]] const rheology::ViscoelasticMaterial& material() const noexcept { return material_; }
  [[nodiscard]] bool with_backing() const noexcept { return with_backing_; }

  /// Throws InfeasibleGeometry when the cell cannot be mapped to a stack.
  [[nodiscard]] AcousticResponse solve(const UnitCell& cell) const {
    AcousticResponse out;
    const std::size_t n = frequencies_.size();
    out.frequencies = frequencies_;
    out.R.resize(n);
    out.T.resize(n);
    out.A.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto s = solve_at(cell, i);
      out.R[i] = s.R;
      out.T[i] = s.T;
      out.A[i] = s.A;
    }
    return out;
  }

  [[nodiscard]] std::vector<double> absorption(const UnitCell& cell) const { return solve(cell).A; }

  [[nodiscard]] StackSolution solve_at(const UnitCell& cell, std::size_t index) const {
    const double f = frequencies_[index];
    LayerStack stack = map_cell_to_stack(cell, samples_[index], f, false, env_, closure_);
    Eigen::Matrix2cd total = Eigen::Matrix2cd::Identity();
    for (const auto& layer : stack.layers) {
      total = total * layer_matrix(layer.medium, layer.thickness_m, f);
    }
    total = total * backing_[index];
    const Medium back = with_backing_ ? env_.air.medium() : env_.water.medium();
    return close_stack(total, characteristic_impedance(env_.water.medium()), characteristic_impedance(back));
  }

private:
  rheology::ViscoelasticMaterial material_;
  std::vector<double> frequencies_;
  bool with_backing_;
  Environment env_;
  VoidLayerClosure closure_;
  std::vector<MatrixSample> samples_;
  std::vector<Eigen::Matrix2cd> backing_;
};

/// R, T, A of a unit cell over a frequency list with the frequency-dependent
/// matrix modulus.
inline AcousticResponse absorption_spectrum(const UnitCell& cell, const rheology::ViscoelasticMaterial& material,
                                            std::vector<double> frequencies, bool with_backing,
                                            const Environment& env = {}, const VoidLayerClosure& closure = {}) {
  if (!within_bounds(cell)) {
    throw InvalidInput("unit cell outside design bounds");
  }
  return CoatingSolver(material, std::move(frequencies), with_backing, env, closure).solve(cell);
}

} // namespace alberich::acoustics
