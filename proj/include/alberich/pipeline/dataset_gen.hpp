#pragma once

#include "alberich/acoustics/coating.hpp"
#include "alberich/acoustics/unit_cell.hpp"
#include "alberich/core/error.hpp"
#include "alberich/core/random.hpp"
#include "alberich/rheology/material.hpp"
#include "alberich/surrogate/dataset.hpp"
#include "alberich/surrogate/normalizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace alberich::pipeline {

/// n points evenly spaced in log10 over [lo, hi], both ends exact.
inline std::vector<double> log_grid(double lo, double hi, int n) {
  if (n < 1 || !(lo > 0.0) || !(hi >= lo)) {
    throw InvalidInput("log_grid needs n >= 1 and 0 < lo <= hi");
  }
  if (n == 1) {
    return {lo};
  }
  std::vector<double> f(static_cast<std::size_t>(n));
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < n; ++i) {
    f[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / (n - 1));
  }
  f.front() = lo;
  f.back() = hi;
  return f;
}

/// lo, lo + step, ... while <= hi.
inline std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) {
    throw InvalidInput("linear_grid needs step > 0 and lo <= hi");
  }
  std::vector<double> f;
  for (long i = 0;; ++i) {
    const double v = lo + step * static_cast<double>(i);
    if (v > hi + 1e-9 * step) {
      break;
    }
    f.push_back(v);
  }
  return f;
}

struct SamplingPlan {
  int n_designs = 400;
  std::vector<double> frequencies;
  std::uint64_t seed = 0;
  acoustics::ClearanceRules rules;
  bool with_backing = true;
  double max_rejection_rate = 0.99;
  int min_draws_before_guard = 1000;

  void validate() const {
    if (n_designs < 1) {
      throw InvalidInput("sampling plan needs at least one design");
    }
    acoustics::require_positive_sorted(frequencies);
    if (frequencies.front() < 10.0 || frequencies.back() > 10000.0) {
      throw InvalidInput("sampling grid must lie within [10 Hz, 10 kHz]");
    }
  }
};

struct DatasetStats {
  long draws = 0;
  long rejected = 0;

  [[nodiscard]] double rejection_rate() const noexcept {
    return draws == 0 ? 0.0 : static_cast<double>(rejected) / static_cast<double>(draws);
  }
};

/// Wilson score lower bound of a binomial proportion.
inline double wilson_lower(long successes, long trials, double z) {
  if (trials <= 0) {
    return 0.0;
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = p + z2 / (2.0 * n);
  const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return (centre - spread) / (1.0 + z2 / n);
}

/// Uniform design in the bounds box drawn from `rng`.
inline acoustics::UnitCell draw_design(Rng& rng) {
  std::array<double, acoustics::UnitCell::dimension> x{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.uniform(acoustics::lower_bounds[i], acoustics::upper_bounds[i]);
  }
  return acoustics::UnitCell::from_array(x);
}

struct GeneratedDataset {
  surrogate::LabeledDataset data;
  std::vector<acoustics::UnitCell> designs;
  DatasetStats stats;
};

/// Rejection-samples feasible designs and labels them with the forward solver.
///
/// The plan is declared misconfigured once the rejection rate is exceeding
/// the limit with high confidence (Wilson lower bound, z = 3), so a feasible
/// fraction sitting right at the limit does not trip on sampling noise.
inline GeneratedDataset generate_dataset(const SamplingPlan& plan, const rheology::ViscoelasticMaterial& material,
                                         const acoustics::Environment& env = {},
                                         const acoustics::VoidLayerClosure& closure = {}) {
  plan.validate();
  const acoustics::CoatingSolver solver(material, plan.frequencies, plan.with_backing, env, closure);
  Rng rng = Rng(plan.seed).split(streams::sampling);
  GeneratedDataset out;
  out.designs.reserve(static_cast<std::size_t>(plan.n_designs));
  while (static_cast<int>(out.designs.size()) < plan.n_designs) {
    const auto cell = draw_design(rng);
    ++out.stats.draws;
    if (acoustics::clearance_violation_mm(cell, plan.rules) > 0.0) {
      ++out.stats.rejected;
      if (out.stats.draws >= plan.min_draws_before_guard &&
          wilson_lower(out.stats.rejected, out.stats.draws, 3.0) > plan.max_rejection_rate) {
        throw InvalidInput("rejection rate " + std::to_string(100.0 * out.stats.rejection_rate()) +
                           "% exceeds the limit after " + std::to_string(out.stats.draws) +
                           " draws; check the design bounds and clearance rules");
      }
      continue;
    }
    out.designs.push_back(cell);
  }
  for (const auto& cell : out.designs) {
    const auto a = solver.absorption(cell);
    for (std::size_t i = 0; i < a.size(); ++i) {
      out.data.add(surrogate::make_input(cell, plan.frequencies[i]), std::clamp(a[i], 0.0, 1.0));
    }
  }
  return out;
}

} // namespace alberich::pipeline
