#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace netgeo {

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed for stream `stream` of a run seeded with `seed`. Deterministic and
// platform independent.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
inline double to_unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Inverse CDF of the unit-mean exponential: -log(1 - u), u in [0, 1).
double exponential_from_uniform(double u) noexcept;

// First `count` primes, used as Halton bases.
std::vector<int> first_primes(int count);

// Halton sequence in `dimension` dimensions with an independent random
// permutation of the digits at every (dimension, digit position); one
// instance per replicate.
class ScrambledHalton {
 public:
  ScrambledHalton(int dimension, std::uint64_t seed);

  int dimension() const noexcept { return static_cast<int>(bases_.size()); }
  // Writes point `index` into `out` (size dimension()). Coordinates lie in [0, 1).
  void point(std::uint64_t index, std::span<double> out) const;

 private:
  std::vector<int> bases_;
  std::vector<int> digits_;                        // digit positions per dimension
  std::vector<std::vector<std::uint16_t>> perms_;  // [dimension][position * base + digit]
};

}  // namespace netgeo
