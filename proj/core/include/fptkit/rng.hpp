#pragma once

// Reproducible random streams. Work is cut into fixed chunks; chunk c of a
// run with seed s draws from std::mt19937_64 seeded with
// splitmix64(s ^ splitmix64(c + 1)), independent of thread count.

#include <cstdint>
#include <random>

namespace fptkit {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) noexcept {
  return splitmix64(seed ^ splitmix64(chunk + 1));
}

inline constexpr std::size_t rng_chunk_size = std::size_t{1} << 16;

/// Uniform on the open interval (0, 1) from the top 53 bits.
inline double uniform_open(std::mt19937_64& eng) {
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace fptkit
