#include <doctest.h>

#include <cmath>
#include <regex>

#include "kagome/io.hpp"
#include "kagome/render.hpp"

using namespace kagome;

namespace {

// Total shoelace area of every path in the SVG, in lattice units.
double svg_path_area(const std::string& svg, double scale) {
  static const std::regex path(R"re(<path[^>]* d="([^"]*)")re");
  static const std::regex num(R"([-0-9.]+)");
  double total = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), path); it != std::sregex_iterator(); ++it) {
    const std::string d = (*it)[1];
    std::vector<double> xs;
    for (auto n = std::sregex_iterator(d.begin(), d.end(), num); n != std::sregex_iterator(); ++n)
      xs.push_back(std::stod(n->str()));
    std::vector<Point> pts;
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) pts.push_back({xs[i] / scale, xs[i + 1] / scale});
    total += std::abs(polygon_area(pts));
  }
  return total;
}

}  // namespace

TEST_SUITE("render") {

TEST_CASE("prototiles have the expected shapes") {
  const double tri = std::sqrt(3.0) / 4;  // unit triangle
  const auto f = prototile_figure();
  REQUIRE(f.tiles.size() == 3);
  for (const auto& p : f.tiles) {
    CHECK(p.points.size() == 8);
    CHECK(polygon_area(p.points) == doctest::Approx(8 * tri));
  }
  // Lozenge hexagon plus two opposite triangles is centrally symmetric.
  const auto loz = tile_polygon({0, 0}, 0, 3);
  CHECK(loz.type == TileType::Lozenge);
  Point c{0, 0};
  for (const auto& q : loz.points) c = {c.x + q.x / 8, c.y + q.y / 8};
  CHECK(c.x == doctest::Approx(hex_center({0, 0}).x));
  CHECK(c.y == doctest::Approx(hex_center({0, 0}).y));
  CHECK(tile_polygon({0, 0}, 0, 1).type == TileType::Fish);
  CHECK(tile_polygon({0, 0}, 0, 2).type == TileType::Trapeze);
}

TEST_CASE("orientation and fill keys") {
  CHECK(tile_orientation(0, 1) == 0);
  CHECK(tile_orientation(5, 0) == 5);
  CHECK(tile_orientation(4, 0) == 4);
  CHECK(tile_orientation(1, 4) == 1);
  CHECK(tile_orientation(5, 2) == 2);
  const auto s = default_style();
  for (int k = 0; k < 6; ++k) {
    CHECK(s.fills.count(fill_key(TileType::Fish, k)) == 1);
    CHECK(s.fills.count(fill_key(TileType::Trapeze, k)) == 1);
  }
  for (int k = 0; k < 3; ++k) CHECK(s.fills.count(fill_key(TileType::Lozenge, k)) == 1);
}

TEST_CASE("tiles cover the region exactly") {
  for (const char* spec : {"lozenge:5", "square:6", "nonflat:7", "witness"}) {
    INFO("region ", spec);
    const auto r = make_region(spec);
    const Tiling t = run(*find_tiling(r), ChainVariant::general(), 5000, 4);
    const auto style = default_style();
    const auto f = build_figure(t, style);
    CHECK(f.tiles.size() == static_cast<std::size_t>(r->num_hexes()));
    CHECK(std::abs(figure_area(f) - region_area(*r)) <= 1e-6 * region_area(*r));
    CHECK(std::abs(svg_path_area(to_svg(f, style), style.scale) - region_area(*r)) <= 1e-6 * region_area(*r));
  }
}

TEST_CASE("svg output is deterministic and honours options") {
  const auto r = make_lozenge_region(3);
  const Tiling t = *find_tiling(r);
  auto style = default_style();
  CHECK(render(t, style) == render(t, style));
  const std::string plain = render(t, style);
  CHECK(plain.find("<svg") != std::string::npos);
  CHECK(plain.find("<circle") == std::string::npos);
  style.show_flips = true;
  style.show_heights = true;
  const std::string rich = render(t, style);
  CHECK(rich.find("<circle") != std::string::npos);
  CHECK(rich.find("<text") != std::string::npos);
  CHECK(to_svg(Figure{}, default_style()).find("<svg") != std::string::npos);
}

TEST_CASE("style json round trip") {
  auto s = default_style();
  s.stroke = "#ff0000";
  s.scale = 20;
  s.fills["fish:3"] = "#00ff00";
  s.show_flips = true;
  const auto back = style_from_json(style_to_json(s));
  CHECK(back.stroke == s.stroke);
  CHECK(back.scale == s.scale);
  CHECK(back.fills == s.fills);
  CHECK(back.show_flips);
  CHECK(style_from_json(Json{{"stroke_width", 0.5}}).fills == default_style().fills);
  CHECK_THROWS_AS(style_from_json(Json{{"scale", "big"}}), FormatError);
}

}  // TEST_SUITE
