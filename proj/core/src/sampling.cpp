#include "netgeo/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace netgeo {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

double exponential_from_uniform(double u) noexcept { return -std::log1p(-u); }

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int candidate = 2; static_cast<int>(primes.size()) < count; ++candidate) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(candidate);
  }
  return primes;
}

ScrambledHalton::ScrambledHalton(int dimension, std::uint64_t seed) {
  if (dimension < 1) throw std::invalid_argument("ScrambledHalton: dimension must be positive");
  bases_ = first_primes(dimension);
  digits_.resize(bases_.size());
  perms_.resize(bases_.size());
  // Permutations are drawn with a hand-rolled Fisher-Yates so the sequence
  // does not depend on the standard library's distribution implementations.
  std::mt19937_64 engine(seed);
  for (std::size_t d = 0; d < bases_.size(); ++d) {
    const int base = bases_[d];
    // Enough positions to resolve double precision.
    const int positions = static_cast<int>(std::ceil(53.0 * std::log(2.0) / std::log(base)));
    digits_[d] = positions;
    auto& table = perms_[d];
    table.resize(static_cast<std::size_t>(positions) * base);
    for (int pos = 0; pos < positions; ++pos) {
      auto first = table.begin() + static_cast<std::ptrdiff_t>(pos) * base;
      std::iota(first, first + base, std::uint16_t{0});
      for (int i = base - 1; i > 0; --i) {
        const auto j = static_cast<int>(engine() % static_cast<std::uint64_t>(i + 1));
        std::swap(first[i], first[j]);
      }
    }
  }
}

void ScrambledHalton::point(std::uint64_t index, std::span<double> out) const {
  for (std::size_t d = 0; d < bases_.size(); ++d) {
    const auto base = static_cast<std::uint64_t>(bases_[d]);
    const auto& table = perms_[d];
    const double inv_base = 1.0 / static_cast<double>(base);
    double scale = inv_base;
    double value = 0.0;
    std::uint64_t rest = index;
    for (int pos = 0; pos < digits_[d]; ++pos) {
      const auto digit = rest % base;
      rest /= base;
      value += table[static_cast<std::size_t>(pos) * base + digit] * scale;
      scale *= inv_base;
    }
    out[d] = std::min(value, 1.0 - 0x1.0p-53);
  }
}

}  // namespace netgeo
