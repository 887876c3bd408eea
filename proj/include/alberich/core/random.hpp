#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>

namespace alberich {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

} // namespace detail

/// Counter-based generator: the n-th draw is a pure function of (key, n).
///
/// A key is derived from a seed and a stream path, so independent consumers
/// (sampling, splitting, weight init, shuffling, GA) get decorrelated streams
/// from one master seed via split(). Distributions are implemented here rather
/// than taken from <random> so that sequences are identical across standard
/// library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(detail::splitmix64(detail::splitmix64(seed) ^ (stream * 0xD1B54A32D192ED03ULL))) {}

  /// Child generator for a named sub-stream; does not advance this generator.
  [[nodiscard]] Rng split(std::uint64_t stream) const noexcept { return Rng(key_, stream + 1); }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t c = counter_++;
    return detail::splitmix64(key_ ^ detail::splitmix64(c));
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (one value per call, two draws consumed).
  double normal() noexcept {
    double u1 = uniform();
    while (u1 <= 0.0) {
      u1 = uniform();
    }
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform integer in [0, n) without modulo bias.
  std::size_t below(std::size_t n) noexcept {
    if (n <= 1) {
      return 0;
    }
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = (~std::uint64_t{0} / bound) * bound;
    std::uint64_t x = next_u64();
    while (x >= limit) {
      x = next_u64();
    }
    return static_cast<std::size_t>(x % bound);
  }

  template <class T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = below(i);
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

  [[nodiscard]] std::uint64_t draws() const noexcept { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Stream identifiers used by the pipeline; fixed so a manifest seed
/// reproduces every stage.
namespace streams {
inline constexpr std::uint64_t sampling = 1;
inline constexpr std::uint64_t split = 2;
inline constexpr std::uint64_t weight_init = 3;
inline constexpr std::uint64_t shuffle = 4;
inline constexpr std::uint64_t genetic = 5;
inline constexpr std::uint64_t baseline = 6;
} // namespace streams

} // namespace alberich
