// Deterministic counter-mode random number generation. Every random draw in
// the library is a pure function of (seed, stream identifiers, counter), so
// results are independent of evaluation order and thread scheduling.
#pragma once

#include <cstdint>

namespace vzsim {

// Finalizer with full 64-bit avalanche (splitmix64 step function).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Key for an independent stream identified by (seed, a, b).
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a,
                                std::uint64_t b) {
  std::uint64_t h = splitmix64(seed ^ 0x243f6a8885a308d3ULL);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return h;
}

// n-th word of the stream.
inline std::uint64_t counter_word(std::uint64_t key, std::uint64_t n) {
  return splitmix64(key ^ splitmix64(n ^ 0x452821e638d01377ULL));
}

// Unbiased-enough map of a word onto [0, n) via the high 64 bits of the
// 128-bit product (bias < n / 2^64).
inline std::uint32_t uniform_index(std::uint64_t word, std::uint32_t n) {
  return static_cast<std::uint32_t>(
      (static_cast<unsigned __int128>(word) * n) >> 64);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace vzsim
