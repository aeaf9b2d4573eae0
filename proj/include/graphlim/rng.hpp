#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace graphlim {

// All randomness in the library comes from SplitMix64 streams. A stream is
// identified by a master seed and a key path; derive_seed(seed, {k1, k2, ...})
// folds the keys into the seed with the SplitMix64 finalizer, so every
// (seed, keys) pair names an independent, platform-independent stream:
//
//   density_mc        node i, sample s  -> s-th output of stream (seed, {i})
//   random_anchors    anchor m          -> m-th output of stream (seed, {kAnchorDomain})
//   sample_wrandom    node i block      -> first output of (seed, {kNodeDomain, i})
//                     edge {i<j}        -> first output of (seed, {kEdgeDomain, i, j})
//   convergence       size n, rep r     -> sample_wrandom seed derive_seed(seed, {n, r})

/// 64-bit finalizer of SplitMix64.
std::uint64_t mix64(std::uint64_t z) noexcept;

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) noexcept;

/// Top 53 bits mapped to [0, 1).
inline double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// SplitMix64 generator; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  result_type operator()() noexcept {
    state_ += kGamma;
    return mix64(state_);
  }

  /// Output number `index` (0-based) without advancing; stateless jump-ahead.
  result_type at(std::uint64_t index) const noexcept { return mix64(state_ + (index + 1) * kGamma); }

  double uniform() noexcept { return to_unit((*this)()); }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

 private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t kAnchorDomain = 0xa1c4;
inline constexpr std::uint64_t kNodeDomain = 0x40de;
inline constexpr std::uint64_t kEdgeDomain = 0xed9e;

}  // namespace graphlim
