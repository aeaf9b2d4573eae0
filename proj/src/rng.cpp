#include "graphlim/rng.hpp"

namespace graphlim {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t h = mix64(seed + SplitMix64::kGamma);
  for (std::uint64_t k : keys) h = mix64(h ^ mix64(k + 2 * SplitMix64::kGamma));
  return h;
}

}  // namespace graphlim
