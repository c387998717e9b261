#include "kagome/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace kagome {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

Point unit(int k) {
  static const std::array<Point, 6> dirs{{{1, 0}, {0.5, kSqrt3 / 2}, {-0.5, kSqrt3 / 2}, {-1, 0},
                                          {-0.5, -kSqrt3 / 2}, {0.5, -kSqrt3 / 2}}};
  return dirs[((k % 6) + 6) % 6];
}

Point operator+(Point p, Point q) { return {p.x + q.x, p.y + q.y}; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

Point hex_center(HexCoord h) { return {2.0 * h.a + h.b, kSqrt3 * h.b}; }

Point vertex_point(const KagomeVertex& v) {
  const Point p = hex_center(v.p), q = hex_center(v.q);
  return {(p.x + q.x) / 2, (p.y + q.y) / 2};
}

int tile_orientation(int ring_p, int ring_q) {
  const int d = ((ring_q - ring_p) % 6 + 6) % 6;
  if (d == 3) return std::min(ring_p, ring_q) % 3;
  return d < 3 ? ring_p : ring_q;
}

std::string fill_key(TileType type, int orientation) {
  return std::string(to_string(type)) + ":" + std::to_string(orientation);
}

RenderStyle default_style() {
  RenderStyle s;
  const char* loz[3] = {"#f2d49b", "#d38b4f", "#8c5a3c"};
  const char* trap[6] = {"#dbe8f6", "#a9c8ea", "#6f9fd4", "#3f73b5", "#27508a", "#18345e"};
  const char* fish[6] = {"#e3f1d4", "#b9dd9a", "#8cc665", "#5fa83f", "#3d8128", "#255a18"};
  for (int k = 0; k < 3; ++k) s.fills[fill_key(TileType::Lozenge, k)] = loz[k];
  for (int k = 0; k < 6; ++k) {
    s.fills[fill_key(TileType::Trapeze, k)] = trap[k];
    s.fills[fill_key(TileType::Fish, k)] = fish[k];
  }
  return s;
}

RenderStyle style_from_json(const Json& j) {
  RenderStyle s = default_style();
  try {
    if (j.contains("fills"))
      for (auto& [k, v] : j.at("fills").items()) s.fills[k] = v.get<std::string>();
    if (j.contains("stroke")) s.stroke = j.at("stroke").get<std::string>();
    if (j.contains("stroke_width")) s.stroke_width = j.at("stroke_width").get<double>();
    if (j.contains("show_heights")) s.show_heights = j.at("show_heights").get<bool>();
    if (j.contains("show_flips")) s.show_flips = j.at("show_flips").get<bool>();
    if (j.contains("scale")) s.scale = j.at("scale").get<double>();
    if (j.contains("margin")) s.margin = j.at("margin").get<double>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("style JSON: ") + e.what());
  }
  if (!(s.scale > 0)) throw FormatError("style JSON: scale must be positive");
  return s;
}

Json style_to_json(const RenderStyle& s) {
  return {{"schema_version", kSchemaVersion}, {"fills", s.fills},          {"stroke", s.stroke},
          {"stroke_width", s.stroke_width},   {"show_heights", s.show_heights}, {"show_flips", s.show_flips},
          {"scale", s.scale},                 {"margin", s.margin}};
}

TilePolygon tile_polygon(HexCoord h, int ring_p, int ring_q) {
  TilePolygon tp;
  tp.type = kernel::type_from_positions(ring_p, ring_q);
  tp.orientation = tile_orientation(ring_p, ring_q);
  if (tp.type == TileType::Lozenge) tp.orientation %= 3;
  const Point c = hex_center(h);
  for (int k = 0; k < 6; ++k) {
    tp.points.push_back(c + unit(k));
    if (k == ring_p || k == ring_q) tp.points.push_back(c + unit(k) + unit(k + 1));
  }
  return tp;
}

Figure build_figure(const Tiling& t, const RenderStyle& style) {
  const Region& r = t.region();
  Figure f;
  for (int h = 0; h < r.num_hexes(); ++h) {
    const auto& ring = r.hex_ring(h);
    int pos[2] = {-1, -1}, found = 0;
    for (int k = 0; k < 6 && found < 2; ++k)
      if (ring[k] >= 0 && t.hex_of(ring[k]) == h) pos[found++] = k;
    f.tiles.push_back(tile_polygon(r.hexes()[h], pos[0], pos[1]));
  }
  if (style.show_heights) {
    const auto hf = height_field(t);
    for (int v = 0; v < r.num_vertices(); ++v) f.labels.emplace_back(vertex_point(r.vertices()[v]), std::to_string(hf.h[v]));
  }
  if (style.show_flips)
    for (int v : r.inner_vertices())
      if (const auto d = kernel::flip_direction(r, t.assign(), v)) f.flips.emplace_back(vertex_point(r.vertices()[v]), *d);
  return f;
}

Figure prototile_figure() {
  Figure f;
  const std::array<std::pair<int, TileType>, 3> seps{
      {{1, TileType::Fish}, {2, TileType::Trapeze}, {3, TileType::Lozenge}}};
  int col = 0;
  for (auto [sep, type] : seps) {
    const HexCoord h{3 * col++, 0};
    auto tp = tile_polygon(h, 0, sep);
    f.tiles.push_back(tp);
    const Point c = hex_center(h);
    f.labels.emplace_back(Point{c.x, c.y - 2.2}, to_string(type));
  }
  return f;
}

double polygon_area(const std::vector<Point>& pts) {
  double s = 0;
  for (std::size_t i = 0, n = pts.size(); i < n; ++i) {
    const Point& p = pts[i];
    const Point& q = pts[(i + 1) % n];
    s += p.x * q.y - q.x * p.y;
  }
  return s / 2;
}

double figure_area(const Figure& f) {
  double a = 0;
  for (const auto& t : f.tiles) a += polygon_area(t.points);
  return a;
}

double region_area(const Region& r) { return r.num_hexes() * 8 * (kSqrt3 / 4); }

std::string to_svg(const Figure& f, const RenderStyle& style) {
  double minx = std::numeric_limits<double>::infinity(), miny = minx;
  double maxx = -minx, maxy = -minx;
  auto grow = [&](Point p) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  };
  for (const auto& t : f.tiles)
    for (auto p : t.points) grow(p);
  for (const auto& [p, _] : f.labels) grow(p);
  if (minx > maxx) minx = maxx = miny = maxy = 0;

  const double s = style.scale, m = style.margin;
  auto X = [&](double x) { return num((x - minx + m) * s); };
  auto Y = [&](double y) { return num((maxy - y + m) * s); };
  const double width = (maxx - minx + 2 * m) * s, height = (maxy - miny + 2 * m) * s;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
  out += "<g id=\"tiles\" stroke=\"" + style.stroke + "\" stroke-width=\"" + num(style.stroke_width * s) +
         "\" stroke-linejoin=\"round\">\n";
  for (const auto& t : f.tiles) {
    const auto it = style.fills.find(fill_key(t.type, t.orientation));
    const std::string fill = it == style.fills.end() ? "#cccccc" : it->second;
    out += "<path class=\"" + std::string(to_string(t.type)) + "\" fill=\"" + fill + "\" d=\"";
    for (std::size_t i = 0; i < t.points.size(); ++i)
      out += (i ? " L" : "M") + X(t.points[i].x) + " " + Y(t.points[i].y);
    out += " Z\"/>\n";
  }
  out += "</g>\n";
  if (!f.flips.empty()) {
    out += "<g id=\"flips\">\n";
    for (const auto& [p, d] : f.flips)
      out += "<circle cx=\"" + X(p.x) + "\" cy=\"" + Y(p.y) + "\" r=\"" + num(0.18 * s) + "\" fill=\"" +
             (d == Direction::Raise ? "#c0392b" : "#2471a3") + "\"/>\n";
    out += "</g>\n";
  }
  if (!f.labels.empty()) {
    out += "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"" + num(0.4 * s) +
           "\" text-anchor=\"middle\" dominant-baseline=\"central\">\n";
    for (const auto& [p, text] : f.labels) out += "<text x=\"" + X(p.x) + "\" y=\"" + Y(p.y) + "\">" + text + "</text>\n";
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render(const Tiling& t, const RenderStyle& style) { return to_svg(build_figure(t, style), style); }

}  // namespace kagome
