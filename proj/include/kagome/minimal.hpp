#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "kagome/tiling.hpp"

namespace kagome {

/// Applies eligible height-decreasing flips until none is left. With a
/// shuffle seed the flips are taken in a pseudorandom order instead of the
/// canonical worklist order; the result does not depend on it.
Tiling greedy_descent(const Tiling& t, FlipSet set, std::optional<std::uint64_t> shuffle_seed = std::nullopt);

/// Dual of greedy_descent with height-increasing flips.
Tiling greedy_ascent(const Tiling& t, FlipSet set, std::optional<std::uint64_t> shuffle_seed = std::nullopt);

/// Some fish-free tiling of the region, by backtracking over hexagons.
std::optional<Tiling> find_restrained_tiling(const RegionPtr& region);

/// (minimum, maximum) height tilings reachable by the flip set: for All, the
/// unique extremes of a simply connected region; for Restrained, the extremes
/// of the restrained component containing a fish-free seed.
std::pair<Tiling, Tiling> extremal_tilings(const RegionPtr& region, FlipSet set);

class PeelFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Minimal restrained tiling of a lozenge region, built by peeling forced
/// width-2 contours and recursing on the inner lozenge of size n - 4.
/// Throws PeelFailure if the forced placement breaks down and
/// std::invalid_argument for regions that are not lozenges.
Tiling contour_peel_minimal(const RegionPtr& region);

/// True when no inner vertex is a flippable local maximum.
bool is_minimal_restrained(const Tiling& t);

}  // namespace kagome
