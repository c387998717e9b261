#pragma once

// SVG output. Geometry is realised only here: hexagon (a, b) is centred at
// a*(2, 0) + b*(1, sqrt 3), so cells have unit edge length.

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kagome/io.hpp"
#include "kagome/tiling.hpp"

namespace kagome {

struct Point {
  double x = 0;
  double y = 0;
};

Point hex_center(HexCoord h);
Point vertex_point(const KagomeVertex& v);

struct RenderStyle {
  // Keyed "fish:k", "trapeze:k" (k in 0..5) and "lozenge:k" (k in 0..2).
  std::map<std::string, std::string> fills;
  std::string stroke = "#1a1a1a";
  double stroke_width = 0.06;
  bool show_heights = false;
  bool show_flips = false;
  double scale = 12;  // pixels per lattice unit
  double margin = 1;  // lattice units
};

RenderStyle default_style();
/// Missing keys keep their defaults. Throws FormatError on bad types.
RenderStyle style_from_json(const Json& j);
Json style_to_json(const RenderStyle& s);

// Orientation of a tile: ring position where the shorter arc between its two
// triangles starts, reduced mod 3 for lozenges.
int tile_orientation(int ring_p, int ring_q);
std::string fill_key(TileType type, int orientation);

struct TilePolygon {
  TileType type{};
  int orientation = 0;
  std::vector<Point> points;  // counter-clockwise
};

struct Figure {
  std::vector<TilePolygon> tiles;
  std::vector<std::pair<Point, std::string>> labels;
  std::vector<std::pair<Point, Direction>> flips;
};

// Polygon of the tile made of a hexagon and the triangles at two ring positions.
TilePolygon tile_polygon(HexCoord h, int ring_p, int ring_q);

Figure build_figure(const Tiling& t, const RenderStyle& style);
// The three prototiles side by side, labelled with their type names.
Figure prototile_figure();

double polygon_area(const std::vector<Point>& pts);
double figure_area(const Figure& f);
// 8 unit-triangle areas per hexagon.
double region_area(const Region& r);

// Deterministic: the same figure and style give the same bytes.
std::string to_svg(const Figure& f, const RenderStyle& style);
std::string render(const Tiling& t, const RenderStyle& style);

}  // namespace kagome
