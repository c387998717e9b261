#include "kagome/tiling.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace kagome {

const char* to_string(TileType t) {
  switch (t) {
    case TileType::Trapeze: return "trapeze";
    case TileType::Fish: return "fish";
    default: return "lozenge";
  }
}

std::size_t hash_assignment(std::span<const int> assign) {
  std::uint64_t h = 1469598103934665603ull;
  for (int x : assign) {
    h ^= static_cast<std::uint32_t>(x);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::string check_assignment(const Region& r, std::span<const int> assign) {
  if (static_cast<int>(assign.size()) != r.num_tris()) return "assignment size mismatch";
  std::vector<int> load(r.num_hexes(), 0);
  for (int t = 0; t < r.num_tris(); ++t) {
    const int h = assign[t];
    const auto& c = r.tri_corners(t);
    if (h < 0 || std::find(c.begin(), c.end(), h) == c.end())
      return "triangle " + std::to_string(t) + " assigned to a non-adjacent hexagon";
    ++load[h];
  }
  for (int h = 0; h < r.num_hexes(); ++h)
    if (load[h] != 2) return "hexagon " + std::to_string(h) + " receives " + std::to_string(load[h]) + " triangles";
  return {};
}

Tiling::Tiling(RegionPtr region, std::vector<int> assign) : region_(std::move(region)), assign_(std::move(assign)) {
  if (!region_) throw InvalidTiling("null region");
  if (auto err = check_assignment(*region_, assign_); !err.empty()) throw InvalidTiling(err);
}

Tiling Tiling::trusted(RegionPtr region, std::vector<int> assign) {
  Tiling t;
  t.region_ = std::move(region);
  t.assign_ = std::move(assign);
  return t;
}

std::size_t Tiling::hash() const { return hash_assignment(assign_); }

std::optional<Tiling> find_tiling(const RegionPtr& region) {
  const Region& r = *region;
  if (r.num_tris() != 2 * r.num_hexes()) return std::nullopt;
  const int nh = r.num_hexes();
  std::vector<int> assign(r.num_tris(), -1);
  std::vector<std::array<int, 2>> held(nh, {-1, -1});
  std::vector<int> load(nh, 0);
  std::vector<int> parent(nh), via(nh), stamp(nh, -1);
  std::deque<int> queue;

  auto give = [&](int hex, int tri) {
    held[hex][load[hex]++] = tri;
    assign[tri] = hex;
  };
  auto take = [&](int hex, int tri) {
    auto& hs = held[hex];
    if (hs[0] == tri) hs[0] = hs[1];
    hs[1] = -1;
    --load[hex];
  };

  for (int t = 0; t < r.num_tris(); ++t) {
    // Breadth-first search for an augmenting path ending at a hexagon with
    // spare capacity. parent[h] is the hexagon the moved triangle via[h]
    // comes from, -1 for the hexagons adjacent to t itself.
    queue.clear();
    for (int h : r.tri_corners(t))
      if (h >= 0 && stamp[h] != t) {
        stamp[h] = t;
        parent[h] = -1;
        via[h] = t;
        queue.push_back(h);
      }
    int end = -1;
    while (!queue.empty() && end < 0) {
      const int h = queue.front();
      queue.pop_front();
      if (load[h] < 2) {
        end = h;
        break;
      }
      for (int moved : held[h])
        for (int h2 : r.tri_corners(moved))
          if (h2 >= 0 && stamp[h2] != t) {
            stamp[h2] = t;
            parent[h2] = h;
            via[h2] = moved;
            queue.push_back(h2);
          }
    }
    if (end < 0) return std::nullopt;
    for (int h = end; h >= 0;) {
      const int tri = via[h], from = parent[h];
      if (from >= 0) take(from, tri);
      give(h, tri);
      h = from;
    }
  }
  return Tiling(region, std::move(assign));
}

namespace kernel {

TileType tile_type(const Region& r, std::span<const int> assign, int hex) {
  const auto& ring = r.hex_ring(hex);
  int pos[2] = {-1, -1}, found = 0;
  for (int k = 0; k < 6; ++k)
    if (ring[k] >= 0 && assign[ring[k]] == hex) {
      if (found == 2) throw InvalidTiling("hexagon with more than two triangles");
      pos[found++] = k;
    }
  if (found != 2) throw InvalidTiling("hexagon without two triangles");
  return type_from_positions(pos[0], pos[1]);
}

namespace {

// Tile type of hex with triangles t1/t2 reassigned to a1/a2.
TileType type_with(const Region& r, std::span<const int> assign, int hex, int t1, int a1, int t2, int a2) {
  const auto& ring = r.hex_ring(hex);
  int pos[2] = {-1, -1}, found = 0;
  for (int k = 0; k < 6 && found < 2; ++k) {
    const int t = ring[k];
    if (t < 0) continue;
    const int a = t == t1 ? a1 : t == t2 ? a2 : assign[t];
    if (a == hex) pos[found++] = k;
  }
  return type_from_positions(pos[0], pos[1]);
}

}  // namespace

FlipInfo describe_flip(const Region& r, std::span<const int> assign, int v) {
  const auto dir = flip_direction(r, assign, v);
  if (!dir) throw NotFlippable("vertex is not flippable");
  const auto& c = r.cells_of(v);
  const int a1 = assign[c.t1], a2 = assign[c.t2];
  const TileType b1 = type_with(r, assign, c.h1, c.t1, a1, c.t2, a2);
  const TileType b2 = type_with(r, assign, c.h2, c.t1, a1, c.t2, a2);
  const TileType f1 = type_with(r, assign, c.h1, c.t1, a2, c.t2, a1);
  const TileType f2 = type_with(r, assign, c.h2, c.t1, a2, c.t2, a1);
  auto fish = [](TileType x) { return x == TileType::Fish ? 1 : 0; };
  FlipInfo info;
  info.vertex = v;
  info.direction = *dir;
  info.fish_delta = fish(f1) + fish(f2) - fish(b1) - fish(b2);
  info.restrained = fish(b1) + fish(b2) + fish(f1) + fish(f2) == 0;
  return info;
}

}  // namespace kernel

TileType classify_tile(const Tiling& t, int hex) { return kernel::tile_type(t.region(), t.assign(), hex); }

int count_fish(const Tiling& t) {
  int n = 0;
  for (int h = 0; h < t.region().num_hexes(); ++h) n += classify_tile(t, h) == TileType::Fish;
  return n;
}

HeightField height_field_from(const Tiling& t, int start, bool depth_first) {
  const Region& r = t.region();
  const auto assign = t.assign();
  std::vector<int> h(r.num_vertices(), 0);
  std::vector<char> known(r.num_vertices(), 0);
  std::deque<int> work;
  known[start] = 1;
  work.push_back(start);
  const auto edges = r.edges();
  while (!work.empty()) {
    int v;
    if (depth_first) {
      v = work.back();
      work.pop_back();
    } else {
      v = work.front();
      work.pop_front();
    }
    for (int e : r.vertex_edges(v)) {
      const auto& ed = edges[e];
      const int flow = (ed.tri >= 0 && ed.hex >= 0 && assign[ed.tri] == ed.hex) ? -2 : 1;
      const int w = ed.from == v ? ed.to : ed.from;
      const int hw = ed.from == v ? h[v] + flow : h[v] - flow;
      if (!known[w]) {
        known[w] = 1;
        h[w] = hw;
        work.push_back(w);
      } else if (h[w] != hw) {
        throw std::logic_error("height integration is inconsistent: invalid tiling");
      }
    }
  }
  const int shift = h[r.base_vertex()];
  for (int& x : h) x -= shift;
  return {t.region_ptr(), std::move(h)};
}

HeightField height_field(const Tiling& t) {
  if (t.region().num_vertices() == 0) return {t.region_ptr(), {}};
  return height_field_from(t, t.region().base_vertex(), false);
}

long long total_height(const Tiling& t) {
  long long s = 0;
  for (int x : height_field(t).h) s += x;
  return s;
}

std::optional<FlipInfo> flip_at(const Tiling& t, int vertex) {
  if (!kernel::flip_direction(t.region(), t.assign(), vertex)) return std::nullopt;
  return kernel::describe_flip(t.region(), t.assign(), vertex);
}

std::optional<FlipInfo> flip_at(const Tiling& t, const KagomeVertex& v) {
  const int idx = t.region().vertex_index(v);
  if (idx < 0) throw std::invalid_argument("flip_at: vertex not in region");
  return flip_at(t, idx);
}

Tiling apply_flip(const Tiling& t, int vertex) {
  if (!kernel::flip_direction(t.region(), t.assign(), vertex))
    throw NotFlippable("apply_flip: vertex " + std::to_string(vertex) + " is not flippable");
  std::vector<int> a(t.assign().begin(), t.assign().end());
  kernel::flip_in_place(t.region(), a, vertex);
  return Tiling::trusted(t.region_ptr(), std::move(a));
}

Extrema local_extrema(const Tiling& t) {
  const Region& r = t.region();
  const auto hf = height_field(t);
  const auto edges = r.edges();
  Extrema ex;
  for (int v = 0; v < r.num_vertices(); ++v) {
    bool is_min = true, is_max = true;
    for (int e : r.vertex_edges(v)) {
      const int w = edges[e].from == v ? edges[e].to : edges[e].from;
      if (hf.h[w] <= hf.h[v]) is_min = false;
      if (hf.h[w] >= hf.h[v]) is_max = false;
    }
    if (is_min) ex.minima.push_back(v);
    if (is_max) ex.maxima.push_back(v);
    if (!r.is_inner(v) || !(is_min || is_max)) continue;
    const auto f = flip_at(t, v);
    if (!f || !f->restrained) continue;
    if (is_max && f->direction == Direction::Lower) ex.flippable_maxima.push_back(v);
    if (is_min && f->direction == Direction::Raise) ex.flippable_minima.push_back(v);
  }
  return ex;
}

bool pointwise_leq(const HeightField& a, const HeightField& b) {
  if (a.region != b.region || a.h.size() != b.h.size())
    throw std::invalid_argument("pointwise_leq: height fields belong to different regions");
  for (std::size_t i = 0; i < a.h.size(); ++i)
    if (a.h[i] > b.h[i]) return false;
  return true;
}

}  // namespace kagome
