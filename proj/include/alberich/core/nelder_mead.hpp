#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace alberich {

struct NelderMeadOptions {
  double f_tolerance = 1e-8; ///< stop when the simplex cost spread falls below this
  double x_tolerance = 1e-8; ///< ...and its largest edge is shorter than this
  int max_evaluations = 4000;
};

template <std::size_t N>
struct NelderMeadResult {
  std::array<double, N> x{};
  double cost = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Derivative-free simplex minimisation with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
template <std::size_t N, class Cost>
NelderMeadResult<N> nelder_mead(Cost&& cost, const std::array<double, N>& start,
                                const std::array<double, N>& step,
                                const NelderMeadOptions& options = {}) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> simplex{};
  std::array<double, N + 1> values{};
  int evaluations = 0;
  auto eval = [&](const Point& p) {
    ++evaluations;
    return cost(p);
  };

  simplex[0] = start;
  for (std::size_t i = 0; i < N; ++i) {
    simplex[i + 1] = start;
    simplex[i + 1][i] += step[i];
  }
  for (std::size_t i = 0; i <= N; ++i) {
    values[i] = eval(simplex[i]);
  }

  std::array<std::size_t, N + 1> order{};
  bool converged = false;
  while (evaluations < options.max_evaluations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[N - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= N; ++i) {
      for (std::size_t k = 0; k < N; ++k) {
        diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[best][k]));
      }
    }
    if (values[worst] - values[best] <= options.f_tolerance && diameter <= options.x_tolerance) {
      converged = true;
      break;
    }

    Point centroid{};
    for (std::size_t i = 0; i <= N; ++i) {
      if (i == worst) {
        continue;
      }
      for (std::size_t k = 0; k < N; ++k) {
        centroid[k] += simplex[i][k] / static_cast<double>(N);
      }
    }
    auto along = [&](double t) {
      Point p{};
      for (std::size_t k = 0; k < N; ++k) {
        p[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
      }
      return p;
    };

    const Point reflected = along(-1.0);
    const double f_reflected = eval(reflected);
    if (f_reflected < values[best]) {
      const Point expanded = along(-2.0);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < values[worst];
    const Point contracted = along(outside ? -0.5 : 0.5);
    const double f_contracted = eval(contracted);
    if (f_contracted < (outside ? f_reflected : values[worst])) {
      simplex[worst] = contracted;
      values[worst] = f_contracted;
      continue;
    }
    for (std::size_t i = 0; i <= N; ++i) {
      if (i == best) {
        continue;
      }
      for (std::size_t k = 0; k < N; ++k) {
        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
      }
      values[i] = eval(simplex[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= N; ++i) {
    if (values[i] < values[best]) {
      best = i;
    }
  }
  return {simplex[best], values[best], evaluations, converged};
}

} // namespace alberich
