#include <doctest.h>

#include <filesystem>

#include "kagome/exact.hpp"
#include "kagome/io.hpp"

using namespace kagome;

TEST_SUITE("io") {

TEST_CASE("region round trip") {
  for (const char* spec : {"lozenge:3", "square:4", "nonflat:5", "witness"}) {
    INFO("region ", spec);
    const auto r = make_region(spec);
    const Json j = region_to_json(*r);
    const auto back = region_from_json(Json::parse(j.dump()));
    CHECK(back->family() == r->family());
    CHECK(back->size_param() == r->size_param());
    CHECK(std::equal(back->hexes().begin(), back->hexes().end(), r->hexes().begin(), r->hexes().end()));
    CHECK(std::equal(back->tris().begin(), back->tris().end(), r->tris().begin(), r->tris().end()));
    CHECK(back->base_vertex() == r->base_vertex());
    CHECK(region_to_json(*back) == j);
  }
}

TEST_CASE("tiling round trip, standalone and against a region") {
  const auto r = make_square_region(4);
  const Tiling t = run(*find_tiling(r), ChainVariant::general(), 3000, 2);
  const Json j = tiling_to_json(t);
  const Tiling loose = tiling_from_json(Json::parse(j.dump()));
  CHECK(std::equal(loose.assign().begin(), loose.assign().end(), t.assign().begin(), t.assign().end()));
  CHECK(tiling_from_json(j, r) == t);
  CHECK(height_field(loose).h == height_field(t).h);
}

TEST_CASE("malformed input is rejected") {
  const auto r = make_lozenge_region(2);
  Json j = region_to_json(*r);
  j["base"] = Json::array({Json::array({50, 50}), Json::array({51, 50})});
  CHECK_THROWS_AS(region_from_json(j), FormatError);
  CHECK_THROWS_AS(region_from_json(Json::object()), FormatError);
  Json bad_tri = region_to_json(*r);
  bad_tri["tris"][0][2] = "X";
  CHECK_THROWS_AS(region_from_json(bad_tri), FormatError);
  Json t = tiling_to_json(*find_tiling(r));
  t["assign"].erase(0);
  CHECK_THROWS_AS(tiling_from_json(t), FormatError);
  Json twice = tiling_to_json(*find_tiling(r));
  twice["assign"][1] = twice["assign"][0];
  CHECK_THROWS_AS(tiling_from_json(twice), FormatError);
  Json swapped = tiling_to_json(*find_tiling(r));
  swapped["assign"][0][1] = Json::array({7, 7});
  CHECK_THROWS_AS(tiling_from_json(swapped), FormatError);
}

TEST_CASE("file arguments") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto r = make_nonflat_lozenge(3);
  const std::string rp = (dir / "kagome_io_region.json").string();
  const std::string tp = (dir / "kagome_io_tiling.json").string();
  write_text_file(rp, region_to_json(*r).dump());
  write_text_file(tp, tiling_to_json(*find_tiling(r)).dump());
  CHECK(load_region_arg(rp)->num_hexes() == 9);
  CHECK(load_region_arg(tp)->num_hexes() == 9);
  CHECK(load_region_arg("lozenge:2")->num_hexes() == 4);
  CHECK_THROWS_AS(read_json_file((dir / "kagome_missing.json").string()), FormatError);
  std::filesystem::remove(rp);
  std::filesystem::remove(tp);
}

TEST_CASE("rationals") {
  CHECK(parse_rational("1/3") == mpq_class(1, 3));
  CHECK(parse_rational("2/6") == mpq_class(1, 3));
  CHECK(parse_rational("0.25") == mpq_class(1, 4));
  CHECK(parse_rational("2") == 2);
  CHECK(parse_rational("-1/2") == mpq_class(-1, 2));
  for (const char* bad : {"", "x", "1/0", "1/", "0.2.5"}) {
    INFO("text ", bad);
    CHECK_THROWS_AS(parse_rational(bad), FormatError);
  }
  CHECK(rational_string(mpq_class(-3, 10)) == "-3/10");
  CHECK(rational_string(mpq_class(4, 2)) == "2");
}

TEST_CASE("graph exports") {
  const auto g = enumerate(make_lozenge_region(2), FlipSet::All);
  const Json s = graph_stats_json(g);
  CHECK(s["schema_version"] == kSchemaVersion);
  CHECK(s["nodes"] == 11);
  CHECK(s["diameter"] == 6);
  CHECK(s["unique_min"] == true);
  CHECK(s.contains("min"));
  const std::string dot = graph_to_dot(g);
  CHECK(dot.rfind("graph flips {", 0) == 0);
  std::size_t links = 0;
  for (std::size_t p = dot.find(" -- "); p != std::string::npos; p = dot.find(" -- ", p + 1)) ++links;
  CHECK(links == g.edges.size());
  const auto wg = enumerate(make_witness_region(), FlipSet::All);
  const Json l = ledger_json(wg, path_coupling_ledger(wg, ChainVariant::general()), ChainVariant::general());
  CHECK(l["worst"]["expected_delta"] == "1/5");
  CHECK(l["worst"]["times_inner_vertices"] == "1");
  CHECK(l["worst"]["bad_vertices"] == 4);
}

}  // TEST_SUITE
