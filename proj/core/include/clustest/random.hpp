#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace clustest {

/// SplitMix64 finalizer. Used both as a seed mixer and as the step function
/// of SplitMix64Stream.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from (seed, index). This is the one
/// split function used throughout the toolkit: per-trial, per-repetition and
/// per-purpose streams are all obtained by chaining split_seed calls.
constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

/// Stream purposes; passed to split_seed so that different consumers of the
/// same repetition seed never share bits.
enum class Stream : std::uint64_t {
  kStartVertex = 1,
  kCoins = 2,
  kGraph = 3,
  kProcess = 4,
  kStrategy = 5,
  kBackend = 6,
  kBootstrap = 7,
};

constexpr std::uint64_t split_seed(std::uint64_t seed, Stream purpose) noexcept {
  return split_seed(seed, static_cast<std::uint64_t>(purpose) << 56);
}

/// Portable PRNG (SplitMix64). All sampling helpers below are implemented
/// here rather than through <random> distributions so that output is
/// bit-identical across standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    // Lemire's multiply-shift with rejection.
    std::uint64_t x = (*this)();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = (*this)();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  template <class T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace clustest
