#pragma once

#include <cstdint>

namespace aebench {

// Counter-based randomness: every draw is a pure function of (key, counter),
// so parallel loops and re-runs produce identical streams.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

// Uniform in (0, 1]; never returns 0 so it is safe under log().
inline double hash_to_unit(std::uint64_t h) {
  return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
}

// Standard normal deviate from one (key, counter) pair via Box-Muller.
double gaussian_hash(std::uint64_t key, std::uint64_t counter);

}  // namespace aebench
