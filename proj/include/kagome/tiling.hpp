#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "kagome/lattice.hpp"

namespace kagome {

// Prototile type by the ring separation of the hexagon's two triangles:
// 1 = Fish, 2 = Trapeze, 3 = Lozenge.
enum class TileType : std::uint8_t { Trapeze, Fish, Lozenge };

const char* to_string(TileType t);

// Raise increases the height at the flipped vertex by 3.
enum class Direction : std::uint8_t { Lower, Raise };

inline Direction opposite(Direction d) { return d == Direction::Lower ? Direction::Raise : Direction::Lower; }

class InvalidTiling : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFlippable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Assignment of every triangle to one adjacent hexagon such that each
/// hexagon receives exactly two triangles. Immutable value; indices refer to
/// the region's canonical cell order.
class Tiling {
 public:
  /// Validates the assignment; throws InvalidTiling.
  Tiling(RegionPtr region, std::vector<int> assign);

  const Region& region() const { return *region_; }
  const RegionPtr& region_ptr() const { return region_; }
  std::span<const int> assign() const { return assign_; }
  int hex_of(int tri) const { return assign_[tri]; }

  bool operator==(const Tiling& o) const { return region_ == o.region_ && assign_ == o.assign_; }
  std::size_t hash() const;

  // Unchecked construction for code that maintains validity itself.
  static Tiling trusted(RegionPtr region, std::vector<int> assign);

 private:
  Tiling() = default;
  RegionPtr region_;
  std::vector<int> assign_;
};

struct TilingHash {
  std::size_t operator()(const Tiling& t) const noexcept { return t.hash(); }
};

std::size_t hash_assignment(std::span<const int> assign);

// Empty string when valid, otherwise the first violation found.
std::string check_assignment(const Region& r, std::span<const int> assign);

// Flips eligible in a flip graph or greedy walk: all flips, or only flips
// whose four tiles (before and after) avoid the fish prototile.
enum class FlipSet : std::uint8_t { All, Restrained };

struct FlipInfo {
  int vertex = -1;  // region vertex index
  Direction direction = Direction::Lower;
  int fish_delta = 0;
  bool restrained = false;
};

/// Deterministic tiler: augmenting paths on the triangle/hexagon incidence
/// graph with hexagon capacity 2. Returns nullopt for untileable regions.
std::optional<Tiling> find_tiling(const RegionPtr& region);

TileType classify_tile(const Tiling& t, int hex);

int count_fish(const Tiling& t);

/// Heights on every region vertex, pinned to 0 at the base vertex.
struct HeightField {
  RegionPtr region;
  std::vector<int> h;

  bool operator==(const HeightField& o) const { return region == o.region && h == o.h; }
};

HeightField height_field(const Tiling& t);

// Same integration with a caller-chosen start vertex and traversal; used to
// check that the field does not depend on the order of integration.
HeightField height_field_from(const Tiling& t, int start_vertex, bool depth_first);

long long total_height(const Tiling& t);

std::optional<FlipInfo> flip_at(const Tiling& t, int vertex);
std::optional<FlipInfo> flip_at(const Tiling& t, const KagomeVertex& v);

/// Throws NotFlippable.
Tiling apply_flip(const Tiling& t, int vertex);

struct Extrema {
  std::vector<int> minima;
  std::vector<int> maxima;
  std::vector<int> flippable_minima;
  std::vector<int> flippable_maxima;
};

Extrema local_extrema(const Tiling& t);

/// Throws std::invalid_argument on region mismatch.
bool pointwise_leq(const HeightField& a, const HeightField& b);

// Assignment-level kernels shared by the chain, the sampler and the
// enumerator. They do not validate their inputs.
namespace kernel {

inline std::optional<Direction> flip_direction(const Region& r, std::span<const int> assign, int v) {
  const auto& c = r.cells_of(v);
  if (c.t1 < 0 || c.t2 < 0 || c.h1 < 0 || c.h2 < 0) return std::nullopt;
  const int a1 = assign[c.t1], a2 = assign[c.t2];
  if (a1 == c.h1 && a2 == c.h2) return Direction::Lower;
  if (a1 == c.h2 && a2 == c.h1) return Direction::Raise;
  return std::nullopt;
}

inline void flip_in_place(const Region& r, std::span<int> assign, int v) {
  const auto& c = r.cells_of(v);
  std::swap(assign[c.t1], assign[c.t2]);
}

inline TileType type_from_positions(int p, int q) {
  int d = p > q ? p - q : q - p;
  if (d > 3) d = 6 - d;
  return d == 1 ? TileType::Fish : d == 2 ? TileType::Trapeze : TileType::Lozenge;
}

TileType tile_type(const Region& r, std::span<const int> assign, int hex);

// fish_delta and restrained flag of the flip available at v (which must be
// flippable).
FlipInfo describe_flip(const Region& r, std::span<const int> assign, int v);

}  // namespace kernel

}  // namespace kagome
