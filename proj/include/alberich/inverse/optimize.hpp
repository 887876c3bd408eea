#pragma once

#include "alberich/acoustics/coating.hpp"
#include "alberich/acoustics/unit_cell.hpp"
#include "alberich/core/error.hpp"
#include "alberich/inverse/genetic.hpp"
#include "alberich/inverse/objective.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace alberich::inverse {

struct Candidate {
  acoustics::UnitCell cell;
  double objective = 0.0;
  double penalty = 0.0;
  bool feasible = false;
  bool penalty_applied = false;
};

/// Absorption of a cell on the objective grid. May throw InfeasibleGeometry
/// for cells the 1D mapping cannot represent.
using SpectrumEvaluator = std::function<std::vector<double>(const acoustics::UnitCell&)>;

/// sum w_i a_i - p; an unmappable cell contributes a = 0.
inline Candidate evaluate_candidate(const acoustics::UnitCell& cell, const ObjectiveSpec& spec,
                                    const PenaltyConfig& pcfg, const SpectrumEvaluator& evaluator) {
  Candidate c;
  c.cell = cell;
  c.penalty = penalty(cell, pcfg);
  c.feasible = c.penalty == 0.0;
  c.penalty_applied = !c.feasible;
  std::vector<double> a;
  try {
    a = evaluator(cell);
  } catch (const InfeasibleGeometry&) {
    if (c.feasible) {
      throw;
    }
    a.assign(spec.size(), 0.0);
  }
  for (double& v : a) {
    v = std::clamp(v, 0.0, 1.0);
  }
  c.objective = weighted_objective(spec, a, c.penalty);
  return c;
}

struct OptimizeConfig {
  GaConfig ga;
  PenaltyConfig penalty;
  double disagreement_threshold = 0.05; ///< relative objective gap that flags the winner
  std::size_t top_count = 5;
};

struct OptimizationReport {
  std::string evaluator;
  Candidate best;
  double solver_objective = 0.0;
  acoustics::AcousticResponse spectrum; ///< forward-solver spectrum of the winner
  double max_transmission = 0.0;
  double disagreement = 0.0;
  bool disagreement_flagged = false;
  std::vector<GenerationStats> trace;
  std::vector<Candidate> top; ///< best distinct members of the final population
  long evaluations = 0;
  long infeasible_evaluations = 0;
};

inline SpectrumEvaluator solver_evaluator(const acoustics::CoatingSolver& solver) {
  return [&solver](const acoustics::UnitCell& c) { return solver.absorption(c); };
}

/// Runs the GA on the weighted objective and re-checks the winner with the
/// forward solver. A large evaluator/solver gap is flagged, not fatal.
inline OptimizationReport optimize_coating(const SpectrumEvaluator& evaluator, std::string evaluator_name,
                                           const acoustics::CoatingSolver& solver, const ObjectiveSpec& spec,
                                           const OptimizeConfig& cfg,
                                           const std::function<void(const GenerationStats&)>& on_generation = {}) {
  if (solver.frequencies() != spec.frequencies) {
    throw InvalidInput("solver grid must equal the objective grid");
  }
  OptimizationReport report;
  report.evaluator = std::move(evaluator_name);
  Fitness<acoustics::UnitCell::dimension> fitness = [&](const std::array<double, acoustics::UnitCell::dimension>& x) {
    const auto c = evaluate_candidate(acoustics::UnitCell::from_array(x), spec, cfg.penalty, evaluator);
    if (!c.feasible) {
      ++report.infeasible_evaluations;
    }
    return c.objective;
  };
  const auto ga = evolve<acoustics::UnitCell::dimension>(cfg.ga, acoustics::lower_bounds, acoustics::upper_bounds,
                                                         fitness, on_generation);
  report.trace = ga.trace;
  report.evaluations = ga.evaluations;
  report.best = evaluate_candidate(acoustics::UnitCell::from_array(ga.best.genes), spec, cfg.penalty, evaluator);

  for (const auto& ind : ga.final_population) {
    if (report.top.size() == cfg.top_count) {
      break;
    }
    const auto cell = acoustics::UnitCell::from_array(ind.genes);
    const bool seen = std::any_of(report.top.begin(), report.top.end(), [&](const Candidate& c) { return c.cell == cell; });
    if (!seen) {
      report.top.push_back(evaluate_candidate(cell, spec, cfg.penalty, evaluator));
    }
  }

  try {
    report.spectrum = solver.solve(report.best.cell);
    report.solver_objective = weighted_objective(spec, report.spectrum.A, report.best.penalty);
    report.max_transmission = *std::max_element(report.spectrum.T.begin(), report.spectrum.T.end());
  } catch (const InfeasibleGeometry&) {
    report.solver_objective = -report.best.penalty;
  }
  const double scale = std::max(std::abs(report.solver_objective), 1e-12);
  report.disagreement = std::abs(report.best.objective - report.solver_objective) / scale;
  report.disagreement_flagged = report.disagreement > cfg.disagreement_threshold;
  return report;
}

/// Best of n uniformly drawn feasible cells under the solver (rejection sampling).
inline Candidate best_random_feasible(const acoustics::CoatingSolver& solver, const ObjectiveSpec& spec, int n,
                                      std::uint64_t seed, const PenaltyConfig& pcfg = {}) {
  Rng rng = Rng(seed).split(streams::baseline);
  Candidate best;
  best.objective = -1e300;
  for (int accepted = 0; accepted < n;) {
    std::array<double, acoustics::UnitCell::dimension> x{};
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = rng.uniform(acoustics::lower_bounds[i], acoustics::upper_bounds[i]);
    }
    const auto cell = acoustics::UnitCell::from_array(x);
    if (penalty(cell, pcfg) > 0.0) {
      continue;
    }
    ++accepted;
    const auto c = evaluate_candidate(cell, spec, pcfg, solver_evaluator(solver));
    if (c.objective > best.objective) {
      best = c;
    }
  }
  return best;
}

} // namespace alberich::inverse
