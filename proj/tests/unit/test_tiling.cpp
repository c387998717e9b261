#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "kagome/exact.hpp"
#include "kagome/minimal.hpp"
#include "oracles.hpp"

using namespace kagome;

TEST_SUITE("tiling") {

TEST_CASE("find_tiling produces valid tilings on every family") {
  for (const char* spec : {"lozenge:1", "lozenge:7", "square:9", "nonflat:12", "witness"}) {
    const auto r = make_region(spec);
    const auto t = find_tiling(r);
    REQUIRE(t.has_value());
    CHECK(check_assignment(*r, t->assign()).empty());
  }
}

TEST_CASE("untileable cell sets are rejected") {
  const auto r = make_lozenge_region(2);
  CHECK(check_assignment(*r, std::vector<int>(r->num_tris(), 0)) != "");
  CHECK_THROWS_AS(Tiling(r, std::vector<int>(r->num_tris(), 0)), InvalidTiling);
  CHECK_THROWS_AS(Tiling(r, std::vector<int>(3, 0)), InvalidTiling);
}

TEST_CASE("tiling counts agree with exact-cover backtracking") {
  // The enumerator walks flips; the oracle counts assignments directly.
  for (const char* spec : {"lozenge:1", "lozenge:2", "lozenge:3", "square:2", "square:3", "nonflat:2", "nonflat:3",
                           "witness"}) {
    const auto r = make_region(spec);
    INFO("region ", spec);
    CHECK(enumerate(r, FlipSet::All).size() == oracle::count_tilings(*r));
  }
}

TEST_CASE("prototile type follows ring separation") {
  CHECK(kernel::type_from_positions(0, 1) == TileType::Fish);
  CHECK(kernel::type_from_positions(5, 0) == TileType::Fish);
  CHECK(kernel::type_from_positions(0, 2) == TileType::Trapeze);
  CHECK(kernel::type_from_positions(4, 0) == TileType::Trapeze);
  CHECK(kernel::type_from_positions(1, 4) == TileType::Lozenge);
}

TEST_CASE("height field is independent of integration order") {
  const auto r = make_nonflat_lozenge(6);
  const Tiling t = run(*find_tiling(r), ChainVariant::general(), 20000, 5);
  const auto ref = height_field(t);
  CHECK(ref.h[r->base_vertex()] == 0);
  for (int start : {0, r->num_vertices() / 2, r->num_vertices() - 1})
    for (bool dfs : {false, true}) CHECK(height_field_from(t, start, dfs) == ref);
}

TEST_CASE("flip involution and locality") {
  const auto r = make_square_region(4);
  Tiling t = run(*find_tiling(r), ChainVariant::general(), 5000, 9);
  int checked = 0;
  for (int v : r->inner_vertices()) {
    const auto info = flip_at(t, v);
    if (!info) {
      CHECK_THROWS_AS(apply_flip(t, v), NotFlippable);
      continue;
    }
    ++checked;
    const Tiling once = apply_flip(t, v);
    CHECK(apply_flip(once, v) == t);
    int changed = 0;
    for (int k = 0; k < r->num_tris(); ++k) changed += once.hex_of(k) != t.hex_of(k);
    CHECK(changed == 2);
    const auto h0 = height_field(t), h1 = height_field(once);
    int moved = 0;
    for (int u = 0; u < r->num_vertices(); ++u) moved += h0.h[u] != h1.h[u];
    CHECK(moved == 1);
    CHECK(h1.h[v] - h0.h[v] == (info->direction == Direction::Raise ? 3 : -3));
    const auto back = flip_at(once, v);
    REQUIRE(back.has_value());
    CHECK(back->direction == opposite(info->direction));
    CHECK(back->fish_delta == -info->fish_delta);
    CHECK(info->fish_delta == count_fish(once) - count_fish(t));
  }
  CHECK(checked > 0);
}

TEST_CASE("flips never change a boundary height and boundary vertices are never flippable") {
  const auto g = enumerate(make_lozenge_region(3), FlipSet::All);
  const auto ref = height_field(g.nodes[0]);
  for (const auto& t : g.nodes) {
    const auto h = height_field(t);
    for (int v : g.region->boundary_vertices()) {
      CHECK(h.h[v] == ref.h[v]);
      CHECK_FALSE(flip_at(t, v).has_value());
    }
  }
}

TEST_CASE("pointwise order") {
  const auto g = enumerate(make_lozenge_region(2), FlipSet::All);
  const auto lo = height_field(g.nodes[*unique_min(g)]);
  const auto hi = height_field(g.nodes[*unique_max(g)]);
  for (const auto& t : g.nodes) {
    const auto h = height_field(t);
    CHECK(pointwise_leq(h, h));
    CHECK(pointwise_leq(lo, h));
    CHECK(pointwise_leq(h, hi));
  }
  for (const auto& a : g.nodes)
    for (const auto& b : g.nodes) {
      const auto ha = height_field(a), hb = height_field(b);
      if (pointwise_leq(ha, hb) && pointwise_leq(hb, ha)) CHECK(a == b);
    }
  const auto other = height_field(*find_tiling(make_lozenge_region(3)));
  CHECK_THROWS_AS(pointwise_leq(lo, other), std::invalid_argument);
}

TEST_CASE("local extrema") {
  const auto r = make_lozenge_region(5);
  const Tiling peel = contour_peel_minimal(r);
  CHECK(local_extrema(peel).flippable_maxima.empty());
  const CounterRng rng(8);
  Tiling t = peel;
  int tested = 0;
  for (int i = 0; i < 3000; ++i) {
    t = step(t, seed_at(*r, rng, i), ChainVariant::restrained());
    const auto e = local_extrema(t);
    CHECK((e.flippable_maxima.empty() == is_minimal_restrained(t)));
    for (int v : e.flippable_maxima) {
      CHECK(std::find(e.maxima.begin(), e.maxima.end(), v) != e.maxima.end());
      const auto f = flip_at(t, v);
      REQUIRE(f.has_value());
      CHECK(f->direction == Direction::Lower);
      CHECK(f->restrained);
      ++tested;
    }
    for (int v : e.flippable_minima) {
      CHECK(std::find(e.minima.begin(), e.minima.end(), v) != e.minima.end());
      const auto f = flip_at(t, v);
      REQUIRE(f.has_value());
      CHECK(f->direction == Direction::Raise);
    }
  }
  CHECK(tested > 0);
}

TEST_CASE("fish count changes by at most two per flip, and by two somewhere") {
  // Two adjacent fish tiles can turn into two trapezes in one flip.
  int seen[3] = {0, 0, 0};
  for (const char* spec : {"lozenge:3", "square:3", "nonflat:3"}) {
    const auto g = enumerate(make_region(spec), FlipSet::All);
    for (const auto& e : g.edges) {
      const int m = std::abs(e.fish_delta);
      REQUIRE(m <= 2);
      ++seen[m];
    }
  }
  CHECK(seen[0] > 0);
  CHECK(seen[1] > 0);
  CHECK(seen[2] > 0);
}

}  // TEST_SUITE
