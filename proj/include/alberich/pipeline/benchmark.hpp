#pragma once

#include "alberich/core/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <string>
#include <vector>

namespace alberich::pipeline {

/// Median of a copy; the upper-lower mean for even counts.
inline double median(std::vector<double> v) {
  if (v.empty()) {
    throw InvalidInput("median of an empty sample");
  }
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// Wall-clock seconds of each of `repetitions` calls of `sweep`.
inline std::vector<double> time_repetitions(const std::function<void()>& sweep, int repetitions) {
  std::vector<double> t;
  t.reserve(static_cast<std::size_t>(repetitions));
  for (int i = 0; i < repetitions; ++i) {
    const auto start = std::chrono::steady_clock::now();
    sweep();
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return t;
}

struct BenchmarkReport {
  int repetitions = 0;
  std::size_t sweep_points = 0;
  std::vector<double> surrogate_seconds;
  std::vector<double> solver_seconds;
  double surrogate_median = 0.0;
  double solver_median = 0.0;
  double speedup = 0.0; ///< solver median / surrogate median

  [[nodiscard]] nlohmann::json to_json() const {
    return {{"repetitions", repetitions},
            {"sweep_points", sweep_points},
            {"surrogate_median_s", surrogate_median},
            {"solver_median_s", solver_median},
            {"solver_over_surrogate", speedup},
            {"surrogate_s", surrogate_seconds},
            {"solver_s", solver_seconds}};
  }
};

/// Times one full sweep of each evaluator. One untimed warm-up call each.
inline BenchmarkReport run_benchmark(const std::function<void()>& surrogate_sweep,
                                     const std::function<void()>& solver_sweep, int repetitions,
                                     std::size_t sweep_points = 500) {
  if (repetitions < 10) {
    throw InvalidInput("benchmark needs at least 10 repetitions");
  }
  surrogate_sweep();
  solver_sweep();
  BenchmarkReport r;
  r.repetitions = repetitions;
  r.sweep_points = sweep_points;
  r.surrogate_seconds = time_repetitions(surrogate_sweep, repetitions);
  r.solver_seconds = time_repetitions(solver_sweep, repetitions);
  r.surrogate_median = median(r.surrogate_seconds);
  r.solver_median = median(r.solver_seconds);
  r.speedup = r.surrogate_median > 0.0 ? r.solver_median / r.surrogate_median : 0.0;
  return r;
}

} // namespace alberich::pipeline
