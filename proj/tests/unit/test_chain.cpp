#include <doctest.h>

#include <cmath>
#include <map>

#include "kagome/exact.hpp"
#include "kagome/minimal.hpp"
#include "oracles.hpp"

using namespace kagome;

namespace {

// Number of (ordered pair x <= y, inner vertex, coin interval) triples on
// which one coupled step breaks pointwise order.
long order_violations(const TilingGraph& g, const ChainVariant& variant) {
  const Region& r = *g.region;
  std::vector<HeightField> h;
  for (const auto& t : g.nodes) h.push_back(height_field(t));
  const auto pts = oracle::breakpoints(variant);
  long bad = 0;
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y) {
      if (x == y || !pointwise_leq(h[x], h[y])) continue;
      for (int v : r.inner_vertices())
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
          const StepSeed seed{v, mpq_class((pts[i] + pts[i + 1]) / 2).get_d()};
          const auto [a, b] = coupled_step({g.nodes[x], g.nodes[y]}, seed, variant);
          bad += !pointwise_leq(height_field(a), height_field(b));
        }
    }
  return bad;
}

}  // namespace

TEST_SUITE("chain") {

TEST_CASE("variant parsing") {
  CHECK(ChainVariant::parse("general").kind == ChainVariant::Kind::General);
  CHECK(ChainVariant::parse("restrained").kind == ChainVariant::Kind::Restrained);
  const auto w = ChainVariant::parse("weighted:2/6");
  CHECK(w.kind == ChainVariant::Kind::Weighted);
  CHECK(w.lambda_num == 1);
  CHECK(w.lambda_den == 3);
  CHECK(ChainVariant::parse("weighted:0.25").name() == "weighted:1/4");
  CHECK_THROWS_AS(ChainVariant::parse("weighted:0"), std::invalid_argument);
  CHECK_THROWS_AS(ChainVariant::parse("weighted:-1/2"), std::invalid_argument);
  CHECK_THROWS_AS(ChainVariant::parse("lazy"), std::invalid_argument);
}

TEST_CASE("seeds select inner vertices and uniform coins deterministically") {
  const auto r = make_square_region(5);
  const CounterRng rng(42);
  std::map<int, int> hits;
  double mean = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const auto s = seed_at(*r, rng, i);
    REQUIRE(r->is_inner(s.vertex));
    REQUIRE(s.coin >= 0.0);
    REQUIRE(s.coin < 1.0);
    ++hits[s.vertex];
    mean += s.coin / n;
    const auto again = seed_at(*r, rng, i);
    REQUIRE(again.vertex == s.vertex);
    REQUIRE(again.coin == s.coin);
  }
  CHECK(static_cast<int>(hits.size()) == r->num_inner());
  CHECK(std::abs(mean - 0.5) < 0.005);
}

TEST_CASE("run is reproducible and zero steps is the identity") {
  const auto t = *find_tiling(make_lozenge_region(4));
  CHECK(run(t, ChainVariant::general(), 0, 1) == t);
  CHECK(run(t, ChainVariant::general(), 3000, 7) == run(t, ChainVariant::general(), 3000, 7));
  CHECK(run(t, ChainVariant::weighted(1, 3), 3000, 7) == run(t, ChainVariant::weighted(1, 3), 3000, 7));
}

TEST_CASE("step rejects boundary vertices") {
  const auto t = *find_tiling(make_lozenge_region(2));
  const int b = t.region().boundary_vertices()[0];
  CHECK_THROWS_AS(step(t, {b, 0.1}, ChainVariant::general()), std::invalid_argument);
}

TEST_CASE("weighted firing probabilities") {
  const auto v = ChainVariant::weighted(1, 3);
  CHECK(fire_probability(v, Direction::Lower, 0, false) == mpq_class(1, 2));
  CHECK(fire_probability(v, Direction::Raise, -1, false) == mpq_class(3, 4));
  CHECK(fire_probability(v, Direction::Lower, 1, false) == mpq_class(1, 4));
  CHECK(fire_probability(v, Direction::Raise, -2, false) == mpq_class(9, 10));
  CHECK(fire_probability(v, Direction::Lower, 2, false) == mpq_class(1, 10));
  CHECK(fire_probability(ChainVariant::restrained(), Direction::Raise, 0, false) == 0);
  CHECK(fire_probability(ChainVariant::restrained(), Direction::Raise, 0, true) == mpq_class(1, 2));
}

TEST_CASE("restrained steps never create fish") {
  const auto r = make_lozenge_region(5);
  Tiling t = contour_peel_minimal(r);
  const CounterRng rng(3);
  for (int i = 0; i < 20000; ++i) {
    t = step(t, seed_at(*r, rng, i), ChainVariant::restrained());
    REQUIRE(count_fish(t) == 0);
  }
}

TEST_CASE("grand coupling is monotone for every chain with lambda <= 1 (exhaustive)") {
  // Every ordered pair, every vertex, every coin interval.
  for (const char* spec : {"lozenge:2", "witness", "nonflat:2", "square:2"}) {
    const auto g = enumerate(make_region(spec), FlipSet::All);
    const std::string name = spec;
    CAPTURE(name);
    CHECK(order_violations(g, ChainVariant::general()) == 0);
    for (auto [p, q] : {std::pair{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 10}}) {
      CAPTURE(q);
      CHECK(order_violations(g, ChainVariant::weighted(p, q)) == 0);
    }
  }
  // Rewarding fish breaks it: a fish-creating raise fires on coins in
  // [1/4, 1/2) at lambda 3 where a fish-stable raise does not.
  CHECK(order_violations(enumerate(make_lozenge_region(2), FlipSet::All), ChainVariant::weighted(3, 1)) > 0);
  const auto rg = enumerate(make_lozenge_region(3), FlipSet::Restrained);
  CHECK(order_violations(rg, ChainVariant::restrained()) == 0);
}

TEST_CASE("sandwich pair stays ordered over 10^4 coupled steps") {
  const auto r = make_lozenge_region(2);
  const auto [lo, hi] = extremal_tilings(r, FlipSet::All);
  std::pair<Tiling, Tiling> pair{lo, hi};
  const CounterRng rng(11);
  for (int i = 0; i < 10000; ++i) {
    pair = coupled_step(pair, seed_at(*r, rng, i), ChainVariant::general());
    REQUIRE(pointwise_leq(height_field(pair.first), height_field(pair.second)));
  }
}

TEST_CASE("a matching flip closes a gap of one") {
  const auto g = enumerate(make_lozenge_region(3), FlipSet::All);
  for (const auto& e : g.edges) {
    const Tiling& a = g.nodes[e.u];
    const Tiling& b = g.nodes[e.v];
    // From u the flip goes in e.direction; a coin on that side fires it on
    // the u copy and cannot fire the reverse flip on the v copy.
    const double coin = e.direction == Direction::Lower ? 0.25 : 0.75;
    const auto [a2, b2] = coupled_step({a, b}, {e.vertex, coin}, ChainVariant::general());
    CHECK(a2 == b2);
  }
}

TEST_CASE("long general run visits states uniformly (chi-square, 1%)") {
  const auto g = enumerate(make_lozenge_region(2), FlipSet::All);
  const Region& r = *g.region;
  std::vector<int> a(g.nodes[0].assign().begin(), g.nodes[0].assign().end());
  std::vector<long> hits(g.size(), 0);
  const CounterRng rng(2024);
  const long samples = 20000, thin = 60;
  long i = 0;
  for (long s = 0; s < samples; ++s) {
    for (long k = 0; k < thin; ++k) kernel::step_in_place(r, a, seed_at(r, rng, i++), ChainVariant::general());
    ++hits[g.find(Tiling::trusted(g.region, a))];
  }
  double chi2 = 0;
  const double expect = static_cast<double>(samples) / g.size();
  for (long h : hits) chi2 += (h - expect) * (h - expect) / expect;
  // 99th percentile of chi-square with 10 degrees of freedom.
  CHECK(chi2 < 23.21);
}

}  // TEST_SUITE
