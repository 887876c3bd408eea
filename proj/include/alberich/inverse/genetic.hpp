#pragma once

#include "alberich/core/error.hpp"
#include "alberich/core/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace alberich::inverse {

struct GaConfig {
  int population = 60;
  int generations = 120;
  double crossover_rate = 0.9;
  double blend_alpha = 0.5;
  double mutation_rate = 0.1;  ///< per-gene probability
  double mutation_scale = 0.05; ///< sigma as a fraction of each gene's range
  int elitism = 2;
  int tournament = 3;
  std::uint64_t seed = 0;

  void validate() const {
    if (population < 2) {
      throw InvalidInput("GA population must be at least 2");
    }
    if (generations < 0 || elitism < 0 || elitism > population || tournament < 1) {
      throw InvalidInput("GA needs generations >= 0, 0 <= elitism <= population, tournament >= 1");
    }
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0) || !(mutation_rate >= 0.0 && mutation_rate <= 1.0) ||
        !(mutation_scale >= 0.0) || !(blend_alpha >= 0.0)) {
      throw InvalidInput("GA rates must lie in [0, 1] and scales must be non-negative");
    }
  }

  /// Objective evaluations made by one run.
  [[nodiscard]] long evaluation_budget() const noexcept {
    return population + static_cast<long>(generations) * (population - elitism);
  }
};

template <std::size_t N>
struct Individual {
  std::array<double, N> genes{};
  double fitness = 0.0;
};

struct GenerationStats {
  int generation = 0;
  double best = 0.0; ///< best-ever objective
  double mean = 0.0; ///< mean objective of the current population
};

template <std::size_t N>
struct GaResult {
  Individual<N> best;
  std::vector<GenerationStats> trace;
  std::vector<Individual<N>> final_population;
  long evaluations = 0;
};

template <std::size_t N>
using Fitness = std::function<double(const std::array<double, N>&)>;

namespace detail {

template <std::size_t N>
double checked(const Fitness<N>& f, const std::array<double, N>& x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw NumericalError("evaluator returned a non-finite objective");
  }
  return v;
}

template <std::size_t N>
std::size_t tournament_pick(const std::vector<Individual<N>>& pop, int k, Rng& rng) {
  std::size_t best = rng.below(pop.size());
  for (int i = 1; i < k; ++i) {
    const std::size_t c = rng.below(pop.size());
    if (pop[c].fitness > pop[best].fitness || (pop[c].fitness == pop[best].fitness && c < best)) {
      best = c;
    }
  }
  return best;
}

} // namespace detail

/// Maximises fitness over a box with tournament selection, blend (BLX-alpha)
/// crossover, Gaussian mutation clipped to the box, and elitism.
template <std::size_t N>
GaResult<N> evolve(const GaConfig& cfg, const std::array<double, N>& lower, const std::array<double, N>& upper,
                   const Fitness<N>& fitness,
                   const std::function<void(const GenerationStats&)>& on_generation = {}) {
  cfg.validate();
  for (std::size_t i = 0; i < N; ++i) {
    if (!(upper[i] >= lower[i])) {
      throw InvalidInput("GA bound " + std::to_string(i) + " has upper < lower");
    }
  }
  Rng rng = Rng(cfg.seed).split(streams::genetic);
  const auto pop_size = static_cast<std::size_t>(cfg.population);
  GaResult<N> out;

  std::vector<Individual<N>> pop(pop_size);
  for (auto& ind : pop) {
    for (std::size_t i = 0; i < N; ++i) {
      ind.genes[i] = rng.uniform(lower[i], upper[i]);
    }
    ind.fitness = detail::checked(fitness, ind.genes);
  }
  out.evaluations = cfg.population;

  auto by_fitness = [&](std::vector<Individual<N>>& p) {
    std::stable_sort(p.begin(), p.end(), [](const auto& a, const auto& b) { return a.fitness > b.fitness; });
  };
  auto record = [&](int generation) {
    double sum = 0.0;
    for (const auto& ind : pop) {
      sum += ind.fitness;
    }
    out.trace.push_back({generation, out.best.fitness, sum / static_cast<double>(pop.size())});
    if (on_generation) {
      on_generation(out.trace.back());
    }
  };
  auto clip = [&](std::array<double, N>& g) {
    for (std::size_t i = 0; i < N; ++i) {
      g[i] = std::clamp(g[i], lower[i], upper[i]);
    }
  };

  by_fitness(pop);
  out.best = pop.front();
  record(0);

  std::vector<Individual<N>> next;
  next.reserve(pop_size);
  for (int gen = 1; gen <= cfg.generations; ++gen) {
    next.assign(pop.begin(), pop.begin() + cfg.elitism);
    while (next.size() < pop_size) {
      const auto& pa = pop[detail::tournament_pick(pop, cfg.tournament, rng)];
      const auto& pb = pop[detail::tournament_pick(pop, cfg.tournament, rng)];
      std::array<std::array<double, N>, 2> kids{pa.genes, pb.genes};
      if (rng.uniform() < cfg.crossover_rate) {
        for (std::size_t i = 0; i < N; ++i) {
          const double lo = std::min(pa.genes[i], pb.genes[i]);
          const double hi = std::max(pa.genes[i], pb.genes[i]);
          const double ext = cfg.blend_alpha * (hi - lo);
          kids[0][i] = rng.uniform(lo - ext, hi + ext);
          kids[1][i] = rng.uniform(lo - ext, hi + ext);
        }
      }
      for (auto& kid : kids) {
        if (next.size() == pop_size) {
          break;
        }
        for (std::size_t i = 0; i < N; ++i) {
          if (rng.uniform() < cfg.mutation_rate) {
            kid[i] += rng.normal() * cfg.mutation_scale * (upper[i] - lower[i]);
          }
        }
        clip(kid);
        next.push_back({kid, detail::checked(fitness, kid)});
        ++out.evaluations;
      }
    }
    pop.swap(next);
    by_fitness(pop);
    if (pop.front().fitness > out.best.fitness) {
      out.best = pop.front();
    }
    record(gen);
  }
  out.final_population = pop;
  return out;
}

/// Best of `budget` uniform draws in the box.
template <std::size_t N>
Individual<N> random_search(long budget, const std::array<double, N>& lower, const std::array<double, N>& upper,
                            const Fitness<N>& fitness, std::uint64_t seed) {
  if (budget < 1) {
    throw InvalidInput("random search needs a positive budget");
  }
  Rng rng = Rng(seed).split(streams::baseline);
  Individual<N> best;
  for (long k = 0; k < budget; ++k) {
    Individual<N> c;
    for (std::size_t i = 0; i < N; ++i) {
      c.genes[i] = rng.uniform(lower[i], upper[i]);
    }
    c.fitness = detail::checked(fitness, c.genes);
    if (k == 0 || c.fitness > best.fitness) {
      best = c;
    }
  }
  return best;
}

} // namespace alberich::inverse
