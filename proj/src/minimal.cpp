#include "kagome/minimal.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "kagome/rng.hpp"

namespace kagome {

namespace {

bool eligible(const Region& r, std::span<const int> a, int v, Direction want, FlipSet set) {
  const auto dir = kernel::flip_direction(r, a, v);
  if (!dir || *dir != want) return false;
  return set == FlipSet::All || kernel::describe_flip(r, a, v).restrained;
}

Tiling greedy(const Tiling& t, FlipSet set, Direction want, std::optional<std::uint64_t> shuffle_seed) {
  const Region& r = t.region();
  std::vector<int> a(t.assign().begin(), t.assign().end());
  std::vector<int> bag(r.inner_vertices().begin(), r.inner_vertices().end());
  std::vector<char> queued(r.num_vertices(), 0);
  for (int v : bag) queued[v] = 1;
  std::reverse(bag.begin(), bag.end());
  const CounterRng rng(shuffle_seed.value_or(0));
  std::uint64_t draws = 0;

  while (!bag.empty()) {
    if (shuffle_seed) {
      const auto pick = rng.below(draws++, 0, static_cast<std::uint32_t>(bag.size()));
      std::swap(bag[pick], bag.back());
    }
    const int v = bag.back();
    bag.pop_back();
    queued[v] = 0;
    if (!eligible(r, a, v, want, set)) continue;
    kernel::flip_in_place(r, a, v);
    // Flippability around the two hexagons may have changed.
    const auto& c = r.cells_of(v);
    for (int h : {c.h1, c.h2})
      for (int w : r.hex_vertices(h))
        if (w >= 0 && r.is_inner(w) && !queued[w]) {
          queued[w] = 1;
          bag.push_back(w);
        }
  }
  return Tiling::trusted(t.region_ptr(), std::move(a));
}

}  // namespace

Tiling greedy_descent(const Tiling& t, FlipSet set, std::optional<std::uint64_t> shuffle_seed) {
  return greedy(t, set, Direction::Lower, shuffle_seed);
}

Tiling greedy_ascent(const Tiling& t, FlipSet set, std::optional<std::uint64_t> shuffle_seed) {
  return greedy(t, set, Direction::Raise, shuffle_seed);
}

std::optional<Tiling> find_restrained_tiling(const RegionPtr& region) {
  const Region& r = *region;
  const int nh = r.num_hexes();
  std::vector<int> a(r.num_tris(), -1);

  // A triangle is dead once every hexagon that could take it has been
  // processed without taking it.
  auto dead_after = [&](int h) {
    for (int t : r.hex_ring(h)) {
      if (t < 0 || a[t] >= 0) continue;
      bool open = false;
      for (int c : r.tri_corners(t)) open |= c > h;
      if (!open) return true;
    }
    return false;
  };

  std::function<bool(int)> place = [&](int h) -> bool {
    if (h == nh) return true;
    const auto& ring = r.hex_ring(h);
    for (int p = 0; p < 6; ++p)
      for (int q = p + 2; q < 6; ++q) {
        if (q - p == 5) continue;  // ring neighbours 0 and 5: fish
        const int tp = ring[p], tq = ring[q];
        if (tp < 0 || tq < 0 || a[tp] >= 0 || a[tq] >= 0) continue;
        a[tp] = h;
        a[tq] = h;
        if (!dead_after(h) && place(h + 1)) return true;
        a[tp] = -1;
        a[tq] = -1;
      }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return Tiling(region, std::move(a));
}

std::pair<Tiling, Tiling> extremal_tilings(const RegionPtr& region, FlipSet set) {
  std::optional<Tiling> seed;
  if (set == FlipSet::All) {
    seed = find_tiling(region);
  } else if (region->family() == "lozenge") {
    seed = contour_peel_minimal(region);
  } else {
    seed = find_restrained_tiling(region);
  }
  if (!seed) throw NotTileable("region has no " + std::string(set == FlipSet::All ? "" : "restrained ") + "tiling");
  return {greedy_descent(*seed, set), greedy_ascent(*seed, set)};
}

bool is_minimal_restrained(const Tiling& t) {
  const Region& r = t.region();
  for (int v : r.inner_vertices())
    if (eligible(r, t.assign(), v, Direction::Lower, FlipSet::Restrained)) return false;
  return true;
}

namespace {

// Hexagon whose lozenge fundamental domain contains the triangle.
HexCoord domain_owner(const TriCoord& t) {
  return t.orient == Orient::Up ? HexCoord{t.a, t.b} : HexCoord{t.a + 1, t.b + 1};
}

// Minimal restrained tilings of the lozenges of size 1, 2 and 3. Row b lists
// the ring positions of the two triangles of hexagon (a, b), a = 0, 1, ...
const std::vector<std::vector<std::string>> kBaseTilings = {
    {"03"},
    {"35 02", "35 02"},
    {"35 25 02", "35 25 02", "35 25 02"},
};

class ContourPeeler {
 public:
  explicit ContourPeeler(const Region& r) : r_(r), a_(r.num_tris(), -1), done_(r.num_hexes(), 0) {}

  std::vector<int> run() {
    peel(0, r_.size_param());
    return a_;
  }

 private:
  static constexpr std::size_t kMaxRingSolutions = 64;

  bool in_square(HexCoord h, int off, int size) const {
    return h.a >= off && h.b >= off && h.a < off + size && h.b < off + size;
  }
  bool in_ring(HexCoord h, int off, int size) const {
    if (!in_square(h, off, size)) return false;
    return h.a < off + 2 || h.b < off + 2 || h.a >= off + size - 2 || h.b >= off + size - 2;
  }

  void place_base(int off, int size) {
    const auto& rows = kBaseTilings[size - 1];
    for (int b = 0; b < size; ++b)
      for (int a = 0; a < size; ++a) {
        const int h = r_.hex_index({off + a, off + b});
        const std::string& cell = rows[b].substr(3 * a, 2);
        for (char c : cell) a_[r_.hex_ring(h)[c - '0']] = h;
        done_[h] = 1;
      }
  }

  // Top two lines left to right, bottom two lines right to left, left two
  // columns top to bottom, right two columns bottom to top. Each strip is
  // walked one cross-section at a time, outer cell first, so that a tile is
  // checked against its neighbours in the other line right away.
  std::vector<int> scan_order(int off, int size) const {
    std::vector<HexCoord> order;
    const int lo = off, hi = off + size - 1;
    for (int a = lo; a <= hi; ++a) order.insert(order.end(), {{a, hi}, {a, hi - 1}});
    for (int a = hi; a >= lo; --a) order.insert(order.end(), {{a, lo}, {a, lo + 1}});
    for (int b = hi - 2; b >= lo + 2; --b) order.insert(order.end(), {{lo, b}, {lo + 1, b}});
    for (int b = lo + 2; b <= hi - 2; ++b) order.insert(order.end(), {{hi, b}, {hi - 1, b}});
    std::vector<int> idx;
    for (const auto& h : order) idx.push_back(r_.hex_index(h));
    return idx;
  }

  // A vertex is a flippable local maximum once both of its hexagons carry
  // their final tiles; unassigned triangles can then only go elsewhere.
  bool creates_flippable_max(int hex) const {
    for (int v : r_.hex_vertices(hex)) {
      if (v < 0 || !r_.is_inner(v)) continue;
      const auto& c = r_.cells_of(v);
      if (!done_[c.h1] || !done_[c.h2]) continue;
      if (a_[c.t1] != c.h1 || a_[c.t2] != c.h2) continue;
      if (kernel::describe_flip(r_, a_, v).restrained) return true;
    }
    return false;
  }

  bool leaves_dead_triangle(int hex, int off, int size) const {
    for (int t : r_.hex_ring(hex)) {
      if (t < 0 || a_[t] >= 0 || !in_ring(domain_owner(r_.tris()[t]), off, size)) continue;
      bool open = false;
      for (int c : r_.tri_corners(t))
        if (c >= 0 && !done_[c] && in_ring(r_.hexes()[c], off, size)) open = true;
      if (!open) return true;
    }
    return false;
  }

  bool has_admissible_pair(int hex, int off, int size) const {
    const auto& ring = r_.hex_ring(hex);
    for (int p = 0; p < 6; ++p)
      for (int q = p + 2; q < 6; ++q)
        if (q - p != 5 && usable(ring[p], off, size) && usable(ring[q], off, size)) return true;
    return false;
  }

  bool usable(int t, int off, int size) const {
    return t >= 0 && a_[t] < 0 && in_ring(domain_owner(r_.tris()[t]), off, size);
  }

  // Every unplaced contour hexagon next to the new tile must still fit one.
  bool starves_neighbour(int hex, int off, int size) const {
    const HexCoord c = r_.hexes()[hex];
    for (const auto& d : kUnitSteps) {
      const int n = r_.hex_index({c.a + d.a, c.b + d.b});
      if (n >= 0 && !done_[n] && in_ring(r_.hexes()[n], off, size) && !has_admissible_pair(n, off, size)) return true;
    }
    return false;
  }

  void search(const std::vector<int>& order, std::size_t i, int off, int size,
              std::vector<std::vector<int>>& solutions) {
    if (solutions.size() > kMaxRingSolutions) return;
    if (i == order.size()) {
      solutions.push_back(a_);
      return;
    }
    const int h = order[i];
    const auto& ring = r_.hex_ring(h);
    for (int p = 0; p < 6; ++p)
      for (int q = p + 2; q < 6; ++q) {
        if (q - p == 5 || !usable(ring[p], off, size) || !usable(ring[q], off, size)) continue;
        a_[ring[p]] = h;
        a_[ring[q]] = h;
        done_[h] = 1;
        if (!creates_flippable_max(h) && !leaves_dead_triangle(h, off, size) && !starves_neighbour(h, off, size))
          search(order, i + 1, off, size, solutions);
        done_[h] = 0;
        a_[ring[p]] = -1;
        a_[ring[q]] = -1;
      }
  }

  void peel(int off, int size) {
    if (size <= 0) return;
    if (size <= 3) {
      place_base(off, size);
      return;
    }
    const auto order = scan_order(off, size);
    std::vector<std::vector<int>> solutions;
    search(order, 0, off, size, solutions);
    if (solutions.empty()) throw PeelFailure("no admissible contour for lozenge of size " + std::to_string(size));
    if (solutions.size() > kMaxRingSolutions)
      throw PeelFailure("contour of lozenge of size " + std::to_string(size) + " is not forced");
    peel(off + 2, size - 4);

    // Vertices between the contour and the inner lozenge are decided only now.
    std::vector<int> survivor;
    int survivors = 0;
    const std::vector<int> inner = a_;
    for (auto& sol : solutions) {
      for (int t = 0; t < r_.num_tris(); ++t)
        if (sol[t] >= 0) a_[t] = sol[t];
      for (int h : order) done_[h] = 1;
      bool ok = true;
      for (int h : order) ok = ok && !creates_flippable_max(h);
      if (ok) {
        ++survivors;
        survivor = a_;
      }
      a_ = inner;
      for (int h : order) done_[h] = 0;
    }
    if (survivors != 1)
      throw PeelFailure(std::to_string(survivors) + " minimal contours for lozenge of size " + std::to_string(size));
    a_ = std::move(survivor);
    for (int h : order) done_[h] = 1;
  }

  const Region& r_;
  std::vector<int> a_;
  std::vector<char> done_;
};

}  // namespace

Tiling contour_peel_minimal(const RegionPtr& region) {
  if (region->family() != "lozenge") throw std::invalid_argument("contour_peel_minimal: region is not a lozenge");
  const auto reference = make_lozenge_region(region->size_param());
  if (!std::equal(reference->hexes().begin(), reference->hexes().end(), region->hexes().begin(),
                  region->hexes().end()) ||
      !std::equal(reference->tris().begin(), reference->tris().end(), region->tris().begin(), region->tris().end()))
    throw std::invalid_argument("contour_peel_minimal: region cells differ from the lozenge construction");
  auto assign = ContourPeeler(*region).run();
  if (auto err = check_assignment(*region, assign); !err.empty()) throw PeelFailure("contour peel: " + err);
  Tiling t(region, std::move(assign));
  if (!is_minimal_restrained(t) || count_fish(t) != 0) throw PeelFailure("contour peel produced a non-minimal tiling");
  return t;
}

}  // namespace kagome
