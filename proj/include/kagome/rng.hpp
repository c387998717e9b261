#pragma once

// Counter-based randomness: every draw is a pure function of (key, counter),
// so any step of any chain can be replayed without storing state.

#include <cstdint>

namespace kagome {

inline constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : key_(splitmix64(seed ^ 0x6A09E667F3BCC909ull)) {}

  // Two independent 64-bit words for counter i.
  constexpr std::uint64_t word(std::uint64_t i, unsigned lane) const {
    return splitmix64(key_ + (2 * i + lane) * 0xD1B54A32D192ED03ull);
  }

  // Uniform integer in [0, n) by multiply-shift.
  std::uint32_t below(std::uint64_t i, unsigned lane, std::uint32_t n) const {
    return static_cast<std::uint32_t>((static_cast<unsigned __int128>(word(i, lane)) * n) >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit(std::uint64_t i, unsigned lane) const {
    return static_cast<double>(word(i, lane) >> 11) * 0x1.0p-53;
  }

  constexpr std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
};

}  // namespace kagome
