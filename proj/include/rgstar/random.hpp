#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace rgstar {

/// One stream per chain. All sampling helpers are templates over the generator
/// so tests can substitute a scripted sequence of raw draws.
using Rng = std::mt19937_64;

/// Uniform integer in [0, n). Consumes no draw when n == 1.
/// Multiply-shift with rejection, so the mapping from raw 64-bit draws to
/// results is fixed across standard libraries.
template <class URBG>
std::uint32_t uniform_below(URBG& g, std::uint32_t n) {
  static_assert(URBG::min() == 0 && URBG::max() == ~std::uint64_t{0}, "expects a full-range 64-bit generator");
  if (n <= 1) return 0;
  const std::uint64_t bound = n;
  unsigned __int128 m = static_cast<unsigned __int128>(static_cast<std::uint64_t>(g())) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(static_cast<std::uint64_t>(g())) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint32_t>(m >> 64);
}

/// Uniform double in [0, 1) with 53 random bits.
template <class URBG>
double uniform01(URBG& g) {
  return static_cast<double>(static_cast<std::uint64_t>(g()) >> 11) * 0x1.0p-53;
}

/// Moves a uniformly random `count`-subset of `items` to the front, in random order.
template <class T, class URBG>
void partial_shuffle(std::span<T> items, std::size_t count, URBG& g) {
  for (std::size_t t = 0; t < count && t + 1 < items.size(); ++t) {
    const auto j = t + uniform_below(g, static_cast<std::uint32_t>(items.size() - t));
    std::swap(items[t], items[j]);
  }
}

/// splitmix64 finalizer; used to derive independent per-chain seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return mix_seed(mix_seed(base) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

}  // namespace rgstar
