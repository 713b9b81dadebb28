#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace seatplan {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

template <typename T>
T const& pick(Rng& rng, std::vector<T> const& items) {
  return items[static_cast<std::size_t>(
      uniform_int(rng, 0, static_cast<int>(items.size()) - 1))];
}

// Fisher-Yates with uniform_int so the permutation only depends on the
// engine, not on the standard library's shuffle implementation.
template <typename T>
void shuffle(Rng& rng, std::vector<T>& items) {
  for (int i = static_cast<int>(items.size()) - 1; i > 0; --i) {
    std::swap(items[i], items[uniform_int(rng, 0, i)]);
  }
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// seed = base xor hash(a, b)
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b) {
  return base ^ splitmix64((a << 32) ^ b ^ splitmix64(a));
}

// ceil(count * fraction), tolerant of binary rounding (0.35 * 20 is 7).
inline int ceil_fraction(int count, double fraction) {
  return static_cast<int>(std::ceil(count * fraction - 1e-9));
}

}  // namespace seatplan
