#include "aebench/rng.hpp"

#include <cmath>
#include <numbers>

namespace aebench {

double gaussian_hash(std::uint64_t key, std::uint64_t counter) {
  const std::uint64_t h1 = splitmix64(hash_combine(key, counter));
  const std::uint64_t h2 = splitmix64(h1);
  const double u1 = hash_to_unit(h1);
  const double u2 = hash_to_unit(h2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace aebench
