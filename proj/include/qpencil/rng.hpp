#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qpencil::rng {

// splitmix64 finalizer; used to mix seeds and stream labels.
inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

// Every random draw in the library flows from one explicit seed through a
// named, counter-based substream: substream(seed, "label", counter).
// Identical (seed, label, counter) triples always yield the same engine.
inline std::mt19937_64 substream(std::uint64_t seed, std::string_view label,
                                 std::uint64_t counter = 0,
                                 std::uint64_t counter2 = 0) {
  std::uint64_t s = mix(seed);
  s = mix(s ^ hash_label(label));
  s = mix(s ^ counter);
  s = mix(s ^ counter2);
  return std::mt19937_64(s);
}

// Uniform double in [0, 1) built from the top 53 bits of the engine output.
// Avoids std::uniform_real_distribution so streams are identical across
// standard-library implementations.
inline double next_double(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform double in [lo, hi).
inline double next_uniform(std::mt19937_64& eng, double lo, double hi) {
  return lo + (hi - lo) * next_double(eng);
}

}  // namespace qpencil::rng
