#include "kagome/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace kagome {

namespace {

const char* orient_tag(Orient o) { return o == Orient::Up ? "U" : "D"; }

Json hex_json(HexCoord h) { return Json::array({h.a, h.b}); }
Json tri_json(TriCoord t) { return Json::array({t.a, t.b, orient_tag(t.orient)}); }

HexCoord hex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("hexagon must be [a, b]");
  return {j[0].get<int>(), j[1].get<int>()};
}

TriCoord tri_from(const Json& j) {
  if (!j.is_array() || j.size() != 3 || !j[2].is_string()) throw FormatError("triangle must be [a, b, \"U\"|\"D\"]");
  const auto o = j[2].get<std::string>();
  if (o != "U" && o != "D") throw FormatError("triangle orientation must be U or D");
  return {j[0].get<int>(), j[1].get<int>(), o == "U" ? Orient::Up : Orient::Down};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

bool same_cells(const Region& r, const Json& j) {
  const auto& hexes = field(j, "hexes");
  const auto& tris = field(j, "tris");
  if (hexes.size() != static_cast<std::size_t>(r.num_hexes()) || tris.size() != static_cast<std::size_t>(r.num_tris()))
    return false;
  for (const auto& h : hexes)
    if (r.hex_index(hex_from(h)) < 0) return false;
  for (const auto& t : tris)
    if (r.tri_index(tri_from(t)) < 0) return false;
  return true;
}

}  // namespace

Json vertex_to_json(const KagomeVertex& v) { return Json::array({hex_json(v.p), hex_json(v.q)}); }

Json region_to_json(const Region& r) {
  Json hexes = Json::array(), tris = Json::array();
  for (auto h : r.hexes()) hexes.push_back(hex_json(h));
  for (auto t : r.tris()) tris.push_back(tri_json(t));
  Json base = r.base_vertex() >= 0 ? vertex_to_json(r.vertices()[r.base_vertex()]) : Json::array();
  return {{"family", r.family()}, {"n", r.size_param()}, {"hexes", hexes}, {"tris", tris}, {"base", base}};
}

RegionPtr region_from_json(const Json& j) {
  try {
    std::vector<HexCoord> hexes;
    std::vector<TriCoord> tris;
    for (const auto& h : field(j, "hexes")) hexes.push_back(hex_from(h));
    for (const auto& t : field(j, "tris")) tris.push_back(tri_from(t));
    auto r = Region::from_cells(field(j, "family").get<std::string>(), field(j, "n").get<int>(), std::move(hexes),
                                std::move(tris));
    if (j.contains("base") && !j["base"].empty()) {
      const auto& b = j["base"];
      if (!b.is_array() || b.size() != 2) throw FormatError("base must be [[a,b],[a,b]]");
      const auto v = KagomeVertex::between(hex_from(b[0]), hex_from(b[1]));
      if (r->base_vertex() < 0 || r->vertices()[r->base_vertex()] != v)
        throw FormatError("stored base vertex differs from the region's least boundary vertex");
    }
    return r;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("region JSON: ") + e.what());
  }
}

Json tiling_to_json(const Tiling& t) {
  const Region& r = t.region();
  Json assign = Json::array();
  for (int i = 0; i < r.num_tris(); ++i)
    assign.push_back(Json::array({tri_json(r.tris()[i]), hex_json(r.hexes()[t.hex_of(i)])}));
  return {{"region", region_to_json(r)}, {"assign", assign}};
}

Tiling tiling_from_json(const Json& j) { return tiling_from_json(j, nullptr); }

Tiling tiling_from_json(const Json& j, const RegionPtr& region) {
  try {
    const auto& rj = field(j, "region");
    RegionPtr r = region && same_cells(*region, rj) ? region : region_from_json(rj);
    std::vector<int> assign(r->num_tris(), -1);
    for (const auto& pair : field(j, "assign")) {
      if (!pair.is_array() || pair.size() != 2) throw FormatError("assign entries must be [triangle, hexagon]");
      const int ti = r->tri_index(tri_from(pair[0]));
      const int hi = r->hex_index(hex_from(pair[1]));
      if (ti < 0 || hi < 0) throw FormatError("assign entry refers to a cell outside the region");
      if (assign[ti] >= 0) throw FormatError("triangle assigned twice");
      assign[ti] = hi;
    }
    if (std::count(assign.begin(), assign.end(), -1)) throw FormatError("some triangle is unassigned");
    return Tiling(r, std::move(assign));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("tiling JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
  if (!out) throw FormatError("write failed for " + path);
}

RegionPtr load_region_arg(const std::string& arg) {
  if (arg.size() > 5 && arg.ends_with(".json")) {
    const Json j = read_json_file(arg);
    return j.contains("assign") ? tiling_from_json(j).region_ptr() : region_from_json(j);
  }
  return make_region(arg);
}

std::string rational_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str();
}

mpq_class parse_rational(const std::string& text) {
  auto bad = [&] { return FormatError("not a rational number: '" + text + "'"); };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    mpq_class q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw bad();
    q.canonicalize();
    return q;
  }
  const auto dot = text.find('.');
  const std::string digits = dot == std::string::npos ? text : text.substr(0, dot) + text.substr(dot + 1);
  mpz_class num;
  if (digits.empty() || digits == "-" || num.set_str(digits, 10) != 0) throw bad();
  mpz_class den = 1;
  if (dot != std::string::npos)
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

Json graph_stats_json(const TilingGraph& g) {
  const auto d = diameter(g);
  const auto lo = unique_min(g), hi = unique_max(g);
  const auto spread = check_distinct_heights(g);
  Json j = {{"schema_version", kSchemaVersion},
            {"family", g.region->family()},
            {"n", g.region->size_param()},
            {"flip_set", g.kind == FlipSet::All ? "all" : "restrained"},
            {"tiles", g.region->num_hexes()},
            {"vertices", g.region->num_vertices()},
            {"inner_vertices", g.region->num_inner()},
            {"nodes", g.size()},
            {"edges", g.edges.size()},
            {"connected", d.connected},
            {"diameter", d.diameter},
            {"component_diameters", d.component_diameters},
            {"max_distinct_heights", spread.max_distinct},
            {"unique_min", lo.has_value()},
            {"unique_max", hi.has_value()}};
  if (lo) j["min"] = tiling_to_json(g.nodes[*lo]);
  if (hi) j["max"] = tiling_to_json(g.nodes[*hi]);
  return j;
}

std::string graph_to_dot(const TilingGraph& g) {
  std::ostringstream out;
  out << "graph flips {\n  node [shape=circle];\n";
  for (int i = 0; i < g.size(); ++i)
    out << "  n" << i << " [label=\"h=" << g.heights[i] << "\\nfish=" << g.fish[i] << "\"];\n";
  for (const auto& e : g.edges) {
    out << "  n" << e.u << " -- n" << e.v << " [label=\"v" << e.vertex << "\"";
    if (e.fish_delta != 0) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

Json ledger_json(const TilingGraph& g, const Ledger& ledger, const ChainVariant& variant) {
  Json j = {{"schema_version", kSchemaVersion},
            {"family", g.region->family()},
            {"n", g.region->size_param()},
            {"variant", variant.name()},
            {"inner_vertices", ledger.inner_vertices},
            {"pairs", ledger.entries.size()}};
  if (ledger.entries.empty()) {
    j["worst"] = nullptr;
    return j;
  }
  const auto& w = ledger.worst_entry();
  const auto& verts = g.region->vertices();
  Json contributions = Json::array();
  for (const auto& [v, c] : w.contributions)
    contributions.push_back({{"vertex", vertex_to_json(verts[v])}, {"value", rational_string(c)}});
  j["worst"] = {{"expected_delta", rational_string(w.expected_delta)},
                {"times_inner_vertices", rational_string(w.expected_delta * ledger.inner_vertices)},
                {"bad_vertices", w.bad_vertices},
                {"flip_vertex", vertex_to_json(verts[w.flip_vertex])},
                {"contributions", contributions},
                {"lower", tiling_to_json(g.nodes[w.lower])},
                {"upper", tiling_to_json(g.nodes[w.upper])}};
  return j;
}

}  // namespace kagome
