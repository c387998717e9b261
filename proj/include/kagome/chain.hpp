#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "kagome/rng.hpp"
#include "kagome/tiling.hpp"

namespace kagome {

/// Which Markov chain a step follows. The fish weight is kept as an exact
/// fraction so that exact analysis can use it without rounding.
struct ChainVariant {
  enum class Kind : std::uint8_t { General, Weighted, Restrained };

  Kind kind = Kind::General;
  std::int64_t lambda_num = 1;
  std::int64_t lambda_den = 1;

  static ChainVariant general() { return {}; }
  static ChainVariant restrained() { return {Kind::Restrained, 1, 1}; }
  // Throws std::invalid_argument unless num > 0 and den > 0.
  static ChainVariant weighted(std::int64_t num, std::int64_t den);
  /// "general", "restrained", "weighted:1/3" or "weighted:0.25".
  static ChainVariant parse(const std::string& text);

  double lambda() const { return static_cast<double>(lambda_num) / static_cast<double>(lambda_den); }
  // 1/(1+lambda^k): firing probability of a flip destroying k fish tiles.
  double destroy_threshold(int k = 1) const { return 1.0 / (1.0 + std::pow(lambda(), k)); }
  std::string name() const;
};

/// Shared randomness of one step: an inner vertex (region vertex index) and
/// a uniform coin in [0, 1).
struct StepSeed {
  int vertex = -1;
  double coin = 0.0;
};

StepSeed seed_at(const Region& r, const CounterRng& rng, std::uint64_t index);

// Whether the flip available at the selected vertex fires for the given coin.
// Coin may be double or an exact rational type. half is 1/2; destroy1 and
// destroy2 are 1/(1+lambda) and 1/(1+lambda^2), the firing probabilities of
// flips destroying one and two fish tiles (two fish tiles can turn into two
// trapezes, or back). A lower flip fires on coins below its probability p, a
// raise on coins at or above 1 - p; aligning the coin with the direction
// keeps the grand coupling monotone.
template <class Coin>
bool flip_fires(ChainVariant::Kind kind, Direction dir, int fish_delta, bool restrained, const Coin& coin,
                const Coin& half, const Coin& destroy1, const Coin& destroy2) {
  const Direction wanted = coin < half ? Direction::Lower : Direction::Raise;
  switch (kind) {
    case ChainVariant::Kind::General: return dir == wanted;
    case ChainVariant::Kind::Restrained: return restrained && dir == wanted;
    case ChainVariant::Kind::Weighted: {
      if (fish_delta == 0) return dir == wanted;
      const Coin& destroy = fish_delta == 1 || fish_delta == -1 ? destroy1 : destroy2;
      const Coin p = fish_delta < 0 ? destroy : Coin(1) - destroy;
      return dir == Direction::Lower ? coin < p : !(coin < Coin(1) - p);
    }
  }
  return false;
}

namespace kernel {

// Applies one step in place; returns the direction of the flip performed, if
// any.
std::optional<Direction> step_in_place(const Region& r, std::span<int> assign, const StepSeed& seed,
                                       const ChainVariant& variant);

}  // namespace kernel

/// One transition. Throws std::invalid_argument if seed.vertex is not inner.
Tiling step(const Tiling& t, const StepSeed& seed, const ChainVariant& variant);

/// Same seed on both components. Throws on region mismatch.
std::pair<Tiling, Tiling> coupled_step(const std::pair<Tiling, Tiling>& pair, const StepSeed& seed,
                                       const ChainVariant& variant);

/// Iterates step() with the counter stream of rng_seed, counters 0..steps-1.
Tiling run(const Tiling& t, const ChainVariant& variant, std::uint64_t steps, std::uint64_t rng_seed);

}  // namespace kagome
