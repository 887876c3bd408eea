#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numbers>
#include <string_view>
#include <utility>

namespace alberich::acoustics {

/// The ten geometric design variables of the two-layer voided coating, in mm.
///
/// x runs through the thickness from the water-side face (x = 0) to the
/// steel-side face (x = t); y runs along the periodic direction of a cell of
/// height h. Void layer 1 sits at x = D1 with radius r1 and holds voids at
/// y = B1, B2; void layer 2 sits at x = D2 with radius r2 and holds voids at
/// y = B3, B4.
struct UnitCell {
  double r1 = 0.0;
  double r2 = 0.0;
  double D1 = 0.0;
  double D2 = 0.0;
  double B1 = 0.0;
  double B2 = 0.0;
  double B3 = 0.0;
  double B4 = 0.0;
  double h = 0.0;
  double t = 0.0;

  static constexpr std::size_t dimension = 10;

  [[nodiscard]] constexpr std::array<double, dimension> to_array() const noexcept {
    return {r1, r2, D1, D2, B1, B2, B3, B4, h, t};
  }

  static constexpr UnitCell from_array(const std::array<double, dimension>& x) noexcept {
    return {x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7], x[8], x[9]};
  }

  friend constexpr bool operator==(const UnitCell&, const UnitCell&) = default;
};

inline constexpr std::array<std::string_view, UnitCell::dimension> design_variable_names{
    "r1", "r2", "D1", "D2", "B1", "B2", "B3", "B4", "h", "t"};

inline constexpr std::array<double, UnitCell::dimension> lower_bounds{1, 1, 10, 10, 10, 10, 10, 10, 30, 30};
inline constexpr std::array<double, UnitCell::dimension> upper_bounds{15, 15, 80, 80, 80, 80, 80, 80, 100, 100};

inline constexpr bool within_bounds(const UnitCell& cell) noexcept {
  const auto x = cell.to_array();
  for (std::size_t i = 0; i < UnitCell::dimension; ++i) {
    if (!(x[i] >= lower_bounds[i] && x[i] <= upper_bounds[i])) {
      return false;
    }
  }
  return true;
}

/// Thicknesses (mm) of the five polyurethane/void sublayers along x:
/// front PU, void layer 1, spacer, void layer 2, back PU. Any may be negative
/// for a cell the 1D mapping cannot represent.
inline constexpr std::array<double, 5> sublayer_thicknesses_mm(const UnitCell& c) noexcept {
  return {c.D1 - c.r1, 2.0 * c.r1, c.D2 - c.D1 - c.r1 - c.r2, 2.0 * c.r2, c.t - c.D2 - c.r2};
}

/// Largest radius whose void layer stays below the fill-fraction limit.
inline constexpr double max_void_radius(double cell_height, int voids_per_layer, double max_fill) noexcept {
  return max_fill * 2.0 * cell_height / (voids_per_layer * std::numbers::pi);
}

struct ClearanceRules {
  double min_edge_clearance_mm = 10.0;
  int voids_per_layer = 2;
  double max_fill_fraction = 0.9;
};

/// Total violation depth in mm: edge clearances on all four faces for every
/// void, a negative spacer between the void layers, and radii over the fill
/// limit. Zero means the cell is manufacturable and mappable.
inline double clearance_violation_mm(const UnitCell& c, const ClearanceRules& rules = {}) noexcept {
  const double m = rules.min_edge_clearance_mm;
  auto short_of = [](double have, double need) { return std::max(0.0, need - have); };
  double v = 0.0;
  for (const auto& [d, r] : {std::pair{c.D1, c.r1}, std::pair{c.D2, c.r2}}) {
    v += short_of(d - r, m) + short_of(c.t - d - r, m);
  }
  for (const auto& [b, r] : {std::pair{c.B1, c.r1}, std::pair{c.B2, c.r1}, std::pair{c.B3, c.r2},
                             std::pair{c.B4, c.r2}}) {
    v += short_of(b - r, m) + short_of(c.h - b - r, m);
  }
  v += short_of(c.D2 - c.D1 - c.r1 - c.r2, 0.0);
  const double r_max = max_void_radius(c.h, rules.voids_per_layer, rules.max_fill_fraction);
  v += short_of(r_max, c.r1) + short_of(r_max, c.r2);
  return v;
}

} // namespace alberich::acoustics
