#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace graphdiff {

/// All randomness flows through mt19937_64; distributions below are written out
/// by hand so draws are identical across standard library implementations.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Stream seed for (global seed, role tag, indices).
///
///   x = splitmix64(seed)
///   x = splitmix64(x ^ fnv1a64(tag))
///   for each index k: x = splitmix64(x ^ k)
///
/// Every field participates, so changing any index changes the stream.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::initializer_list<std::uint64_t> indices = {});

inline Rng make_rng(std::uint64_t seed, std::string_view tag, std::initializer_list<std::uint64_t> indices = {}) {
  return Rng(derive_seed(seed, tag, indices));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// True with probability p; p <= 0 never fires and p >= 1 always does.
inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

/// Uniform integer in [0, bound), bound > 0, by rejection.
std::uint64_t uniform_index(Rng& rng, std::uint64_t bound);

template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace graphdiff
