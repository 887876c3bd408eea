#pragma once

#include "alberich/core/error.hpp"
#include "alberich/core/nelder_mead.hpp"
#include "alberich/rheology/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace alberich::rheology {

/// A sweep placed in reduced coordinates: log10 of shifted frequency and moduli.
struct ReducedCurve {
  double temperature_c = 0.0;
  std::vector<double> log_f;
  std::vector<double> log_storage;
  std::vector<double> log_f_loss; ///< subset of log_f where loss > 0
  std::vector<double> log_loss;
};

inline ReducedCurve to_reduced(const IsothermalSweep& sweep, double log10_horizontal,
                               double log10_vertical) {
  ReducedCurve c;
  c.temperature_c = sweep.temperature_c;
  c.log_f.reserve(sweep.points.size());
  c.log_storage.reserve(sweep.points.size());
  for (const auto& p : sweep.points) {
    const double x = std::log10(p.frequency_hz) + log10_horizontal;
    c.log_f.push_back(x);
    c.log_storage.push_back(std::log10(p.storage_pa) + log10_vertical);
    if (p.loss_pa > 0.0) {
      c.log_f_loss.push_back(x);
      c.log_loss.push_back(std::log10(p.loss_pa) + log10_vertical);
    }
  }
  return c;
}

struct CostOptions {
  double no_overlap_penalty = 1e3;
  std::size_t min_overlap_points = 2;
};

namespace detail {

inline double point_segment_distance(double px, double py, double ax, double ay, double bx,
                                     double by) noexcept {
  const double dx = bx - ax;
  const double dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (ax + t * dx), py - (ay + t * dy));
}

inline double point_polyline_distance(double px, double py, std::span<const double> xs,
                                      std::span<const double> ys) noexcept {
  if (xs.size() == 1) {
    return std::hypot(px - xs[0], py - ys[0]);
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    best = std::min(best, point_segment_distance(px, py, xs[i], ys[i], xs[i + 1], ys[i + 1]));
  }
  return best;
}

struct DistanceSum {
  double total = 0.0;
  std::size_t count = 0;
};

// Points of (ax, ay) inside [lo, hi] measured against the polyline (bx, by).
inline DistanceSum directed(std::span<const double> ax, std::span<const double> ay,
                            std::span<const double> bx, std::span<const double> by, double lo,
                            double hi) {
  DistanceSum s;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    if (ax[i] < lo || ax[i] > hi) {
      continue;
    }
    s.total += point_polyline_distance(ax[i], ay[i], bx, by);
    ++s.count;
  }
  return s;
}

// Mean symmetric shortest distance over the shared log-frequency window of one
// modulus channel; nullopt-like negative count when there is no usable overlap.
inline DistanceSum channel(std::span<const double> ax, std::span<const double> ay,
                           std::span<const double> bx, std::span<const double> by) {
  if (ax.empty() || bx.empty()) {
    return {};
  }
  const double lo = std::max(ax.front(), bx.front());
  const double hi = std::min(ax.back(), bx.back());
  if (hi < lo) {
    return {};
  }
  auto ab = directed(ax, ay, bx, by, lo, hi);
  const auto ba = directed(bx, by, ax, ay, lo, hi);
  ab.total += ba.total;
  ab.count += ba.count;
  return ab;
}

} // namespace detail

/// Misalignment of two neighbouring curves in log10(f) x log10(modulus) space.
///
/// Every point of either curve inside the shared frequency window contributes
/// its shortest distance to the other curve's piecewise-linear interpolant;
/// storage and loss channels both count. The result is the mean contribution,
/// so a uniform offset of d yields a cost of d whatever the overlap width.
/// Curves sharing fewer than min_overlap_points points per side cost
/// no_overlap_penalty plus the gap between their windows.
inline double pair_misalignment(const ReducedCurve& a, const ReducedCurve& b,
                                const CostOptions& options = {}) {
  const auto storage = detail::channel(a.log_f, a.log_storage, b.log_f, b.log_storage);
  if (storage.count < 2 * options.min_overlap_points) {
    const double gap = std::max({0.0, b.log_f.front() - a.log_f.back(),
                                 a.log_f.front() - b.log_f.back()});
    return options.no_overlap_penalty + gap;
  }
  const auto loss = detail::channel(a.log_f_loss, a.log_loss, b.log_f_loss, b.log_loss);
  return (storage.total + loss.total) / static_cast<double>(storage.count + loss.count);
}

/// Total misalignment over consecutive curves (callers order by temperature).
inline double misalignment_cost(std::span<const ReducedCurve> curves,
                                const CostOptions& options = {}) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < curves.size(); ++i) {
    total += pair_misalignment(curves[i], curves[i + 1], options);
  }
  return total;
}

struct ShiftOptions {
  double horizontal_bound = 12.0; ///< |log10 aT| limit, decades
  double vertical_bound = 0.5;    ///< |log10 bT| limit, decades
  int restarts = 3;
  NelderMeadOptions simplex{1e-8, 1e-8, 4000};
  CostOptions cost;
};

struct MasterCurveBuild {
  MasterCurve curve;
  ShiftFactors shifts;
  double cost_before = 0.0; ///< all sweeps unshifted
  double cost_after = 0.0;
};

/// Least-squares quartic of y against x; returns ascending coefficients.
inline Quartic fit_quartic(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) {
    throw InvalidInput("fit_quartic needs matching, non-empty samples");
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, 5);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (Eigen::Index k = 0; k < 5; ++k) {
      a(i, k) = p;
      p *= x[static_cast<std::size_t>(i)];
    }
    b(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd c = a.completeOrthogonalDecomposition().solve(b);
  return {c(0), c(1), c(2), c(3), c(4)};
}

namespace detail {

inline double max_abs_residual(const Quartic& c, std::span<const double> x,
                               std::span<const double> y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, std::abs(evaluate(c, x[i]) - y[i]));
  }
  return worst;
}

} // namespace detail

/// Assembles the union of shifted points and fits the storage/loss quartics.
inline MasterCurve assemble_master_curve(std::span<const IsothermalSweep> sweeps,
                                         const ShiftFactors& shifts) {
  if (sweeps.size() != shifts.entries.size()) {
    throw InvalidInput("one shift entry per sweep is required");
  }
  MasterCurve curve;
  curve.reference_temperature_c = shifts.reference_temperature_c;
  for (std::size_t s = 0; s < sweeps.size(); ++s) {
    const auto& e = shifts.entries[s];
    const double scale = std::pow(10.0, e.log10_vertical);
    for (const auto& p : sweeps[s].points) {
      curve.points.push_back(
          {std::log10(p.frequency_hz) + e.log10_horizontal, p.storage_pa * scale, p.loss_pa * scale});
    }
  }
  std::stable_sort(curve.points.begin(), curve.points.end(),
                   [](const MasterPoint& a, const MasterPoint& b) {
                     return a.log10_frequency < b.log10_frequency;
                   });
  curve.points.erase(std::unique(curve.points.begin(), curve.points.end(),
                                 [](const MasterPoint& a, const MasterPoint& b) {
                                   return a.log10_frequency == b.log10_frequency &&
                                          a.storage_pa == b.storage_pa && a.loss_pa == b.loss_pa;
                                 }),
                     curve.points.end());

  std::vector<double> x, ys, xl, yl;
  for (const auto& p : curve.points) {
    x.push_back(p.log10_frequency);
    ys.push_back(std::log10(p.storage_pa));
    if (p.loss_pa > 0.0) {
      xl.push_back(p.log10_frequency);
      yl.push_back(std::log10(p.loss_pa));
    }
  }
  curve.log10_freq_min = x.front();
  curve.log10_freq_max = x.back();
  curve.poly_storage = fit_quartic(x, ys);
  curve.max_residual_storage = detail::max_abs_residual(curve.poly_storage, x, ys);
  if (xl.empty()) {
    curve.lossless = true;
  } else {
    curve.poly_loss = fit_quartic(xl, yl);
    curve.max_residual_loss = detail::max_abs_residual(curve.poly_loss, xl, yl);
  }
  return curve;
}

/// Time-temperature superposition by direct shift optimisation.
///
/// Sweeps are placed outward from the reference temperature; each one is
/// aligned against its already-placed temperature neighbour by Nelder-Mead
/// over (horizontal, vertical) shift, restarted from several horizontal
/// offsets. The reference sweep keeps both shifts at exactly zero.
inline MasterCurveBuild build_master_curve(std::span<const IsothermalSweep> sweeps,
                                           double reference_temperature_c,
                                           const ShiftOptions& options = {}) {
  if (sweeps.size() < 2) {
    throw InvalidInput("a master curve needs at least two isothermal sweeps");
  }
  for (const auto& s : sweeps) {
    s.validate();
  }

  std::vector<std::size_t> order(sweeps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sweeps[a].temperature_c < sweeps[b].temperature_c;
  });
  std::vector<IsothermalSweep> sorted;
  sorted.reserve(sweeps.size());
  for (auto i : order) {
    sorted.push_back(sweeps[i]);
  }

  const auto ref_it = std::find_if(sorted.begin(), sorted.end(), [&](const IsothermalSweep& s) {
    return std::abs(s.temperature_c - reference_temperature_c) < 1e-9;
  });
  if (ref_it == sorted.end()) {
    throw InvalidInput("reference temperature " + std::to_string(reference_temperature_c) +
                       " C does not match any sweep");
  }
  const auto ref = static_cast<std::size_t>(ref_it - sorted.begin());

  std::vector<double> horizontal(sorted.size(), 0.0);
  std::vector<double> vertical(sorted.size(), 0.0);
  std::vector<ReducedCurve> placed(sorted.size());
  placed[ref] = to_reduced(sorted[ref], 0.0, 0.0);

  const double hb = options.horizontal_bound;
  const double vb = options.vertical_bound;

  auto align = [&](std::size_t i, std::size_t neighbour) {
    const auto& target = placed[neighbour];
    const auto& sweep = sorted[i];
    auto cost = [&](const std::array<double, 2>& p) {
      const double h = std::clamp(p[0], -hb, hb);
      const double v = std::clamp(p[1], -vb, vb);
      const double excess = std::abs(p[0] - h) + std::abs(p[1] - v);
      return pair_misalignment(to_reduced(sweep, h, v), target, options.cost) +
             1e3 * excess * excess;
    };
    const double width = std::max(1.0, std::log10(sweep.points.back().frequency_hz /
                                                  sweep.points.front().frequency_hz));
    const std::array<double, 3> offsets{0.0, 0.5 * width, -0.5 * width};
    NelderMeadResult<2> best;
    best.cost = std::numeric_limits<double>::infinity();
    const int restarts = std::clamp(options.restarts, 1, 3);
    for (int r = 0; r < restarts; ++r) {
      const std::array<double, 2> start{horizontal[neighbour] + offsets[static_cast<std::size_t>(r)],
                                        vertical[neighbour]};
      const auto result = nelder_mead(cost, start, {0.5, 0.05}, options.simplex);
      if (result.cost < best.cost) {
        best = result;
      }
    }
    horizontal[i] = std::clamp(best.x[0], -hb, hb);
    vertical[i] = std::clamp(best.x[1], -vb, vb);
    placed[i] = to_reduced(sweep, horizontal[i], vertical[i]);
    if (pair_misalignment(placed[i], target, options.cost) >= options.cost.no_overlap_penalty) {
      throw NumericalError("sweep at " + std::to_string(sweep.temperature_c) +
                           " C does not overlap its neighbour after shift optimisation");
    }
  };

  for (std::size_t i = ref + 1; i < sorted.size(); ++i) {
    align(i, i - 1);
  }
  for (std::size_t i = ref; i-- > 0;) {
    align(i, i + 1);
  }

  MasterCurveBuild out;
  out.shifts.reference_temperature_c = reference_temperature_c;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out.shifts.entries.push_back({sorted[i].temperature_c, horizontal[i], vertical[i]});
  }

  std::vector<ReducedCurve> unshifted;
  unshifted.reserve(sorted.size());
  for (const auto& s : sorted) {
    unshifted.push_back(to_reduced(s, 0.0, 0.0));
  }
  out.cost_before = misalignment_cost(unshifted, options.cost);
  out.cost_after = misalignment_cost(placed, options.cost);
  out.curve = assemble_master_curve(sorted, out.shifts);
  return out;
}

} // namespace alberich::rheology
