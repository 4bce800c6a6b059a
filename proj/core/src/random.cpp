#include "graphdiff/random.hpp"

#include <limits>
#include <stdexcept>

namespace graphdiff {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::initializer_list<std::uint64_t> indices) {
  std::uint64_t x = splitmix64(seed);
  x = splitmix64(x ^ fnv1a64(tag));
  for (auto k : indices) x = splitmix64(x ^ k);
  return x;
}

std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_index: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

}  // namespace graphdiff
