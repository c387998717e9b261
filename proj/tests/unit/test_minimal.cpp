#include <doctest.h>

#include "kagome/exact.hpp"
#include "kagome/minimal.hpp"

using namespace kagome;

TEST_SUITE("minimal") {

TEST_CASE("greedy descent does not depend on the flip order") {
  for (const char* spec : {"lozenge:4", "square:5", "nonflat:5"}) {
    INFO("region ", spec);
    const auto r = make_region(spec);
    const Tiling start = run(*find_tiling(r), ChainVariant::general(), 4000, 13);
    const Tiling lo = greedy_descent(start, FlipSet::All);
    const Tiling hi = greedy_ascent(start, FlipSet::All);
    for (std::uint64_t s = 1; s <= 5; ++s) {
      CHECK(greedy_descent(start, FlipSet::All, s) == lo);
      CHECK(greedy_ascent(start, FlipSet::All, s) == hi);
    }
    CHECK(pointwise_leq(height_field(lo), height_field(start)));
    CHECK(pointwise_leq(height_field(start), height_field(hi)));
  }
}

TEST_CASE("extremal tilings match the enumerated extremes") {
  for (const char* spec : {"lozenge:3", "square:3", "nonflat:3", "witness"}) {
    INFO("region ", spec);
    const auto r = make_region(spec);
    const auto g = enumerate(r, FlipSet::All);
    const auto [lo, hi] = extremal_tilings(r, FlipSet::All);
    CHECK(g.find(lo) == *unique_min(g));
    CHECK(g.find(hi) == *unique_max(g));
  }
}

TEST_CASE("restrained tilings are fish-free") {
  for (const char* spec : {"lozenge:6", "square:6", "nonflat:4"}) {
    const auto t = find_restrained_tiling(make_region(spec));
    REQUIRE(t.has_value());
    CHECK(count_fish(*t) == 0);
  }
}

TEST_CASE("contour peel is the unique restrained minimum for small lozenges") {
  // Enumerate the restrained flip graph and collect every local minimum.
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    const auto r = make_lozenge_region(n);
    const Tiling peel = contour_peel_minimal(r);
    CHECK(count_fish(peel) == 0);
    CHECK(is_minimal_restrained(peel));
    const auto g = enumerate(r, FlipSet::Restrained);
    int minima = 0;
    for (const auto& t : g.nodes) minima += is_minimal_restrained(t);
    CHECK(minima == 1);
    CHECK(g.find(peel) == 0);
  }
}

TEST_CASE("contour peel stays valid and minimal for larger lozenges") {
  for (int n = 1; n <= 14; ++n) {
    CAPTURE(n);
    const auto r = make_lozenge_region(n);
    const Tiling t = contour_peel_minimal(r);
    CHECK(check_assignment(*r, t.assign()).empty());
    CHECK(count_fish(t) == 0);
    CHECK(is_minimal_restrained(t));
    CHECK(greedy_descent(t, FlipSet::Restrained) == t);
  }
  CHECK_THROWS_AS(contour_peel_minimal(make_square_region(3)), std::invalid_argument);
}

}  // TEST_SUITE
