#pragma once

#include <cstdint>

namespace afpsrc {

/// Counter-based generator: draw i of stream s under seed k is a pure function
/// of (k, s, i), so experiments replay exactly on any platform. The mixing
/// function is SplitMix64.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Uniform integer in [0, bound), bound > 0, without modulo bias.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Standard normal via Box-Muller; every call consumes two draws.
  double normal() noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Well-known stream ids so independent uses never share draws.
namespace streams {
inline constexpr std::uint64_t kSplitAfp = 1;
inline constexpr std::uint64_t kSplitNonAfp = 2;
inline constexpr std::uint64_t kDictionaryNoise = 3;
inline constexpr std::uint64_t kSynthetic = 4;
}  // namespace streams

}  // namespace afpsrc
