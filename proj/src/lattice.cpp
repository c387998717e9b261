#include "kagome/lattice.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <utility>

namespace kagome {

KagomeVertex KagomeVertex::between(HexCoord x, HexCoord y) {
  if (!adjacent(x, y)) throw std::invalid_argument("KagomeVertex: hexagons are not adjacent");
  return x < y ? KagomeVertex{x, y} : KagomeVertex{y, x};
}

int step_index(HexCoord d) {
  for (int k = 0; k < 6; ++k)
    if (kUnitSteps[k] == d) return k;
  return -1;
}

bool adjacent(HexCoord x, HexCoord y) { return step_index(y - x) >= 0; }

std::array<HexCoord, 3> corners(TriCoord t) {
  if (t.orient == Orient::Up) return {{{t.a, t.b}, {t.a + 1, t.b}, {t.a, t.b + 1}}};
  return {{{t.a + 1, t.b}, {t.a + 1, t.b + 1}, {t.a, t.b + 1}}};
}

TriCoord tri_around(HexCoord h, int k) {
  switch (((k % 6) + 6) % 6) {
    case 0: return {h.a, h.b, Orient::Up};
    case 1: return {h.a - 1, h.b, Orient::Down};
    case 2: return {h.a - 1, h.b, Orient::Up};
    case 3: return {h.a - 1, h.b - 1, Orient::Down};
    case 4: return {h.a, h.b - 1, Orient::Up};
    default: return {h.a, h.b - 1, Orient::Down};
  }
}

int ring_position(HexCoord h, TriCoord t) {
  for (int k = 0; k < 6; ++k)
    if (tri_around(h, k) == t) return k;
  return -1;
}

IncidentCells incident_cells(const KagomeVertex& v) {
  const int k = step_index(v.q - v.p);
  return {tri_around(v.p, k), v.p, tri_around(v.p, k + 5), v.q};
}

OrientedEdge oriented_edge(TriCoord t, HexCoord h) {
  const int k = ring_position(h, t);
  if (k < 0) throw std::invalid_argument("oriented_edge: triangle does not touch hexagon");
  return {KagomeVertex::between(h, h + kUnitSteps[k]),
          KagomeVertex::between(h, h + kUnitSteps[(k + 1) % 6])};
}

int Region::hex_index(HexCoord h) const {
  auto it = hex_idx_.find(h);
  return it == hex_idx_.end() ? -1 : it->second;
}

int Region::tri_index(TriCoord t) const {
  auto it = tri_idx_.find(t);
  return it == tri_idx_.end() ? -1 : it->second;
}

int Region::vertex_index(const KagomeVertex& v) const {
  auto it = vertex_idx_.find(v);
  return it == vertex_idx_.end() ? -1 : it->second;
}

RegionPtr Region::from_cells(std::string family, int n, std::vector<HexCoord> hexes,
                             std::vector<TriCoord> tris) {
  std::shared_ptr<Region> r(new Region());
  r->family_ = std::move(family);
  r->n_ = n;
  r->hexes_ = std::move(hexes);
  r->tris_ = std::move(tris);
  r->build();
  return r;
}

void Region::build() {
  std::sort(hexes_.begin(), hexes_.end());
  std::sort(tris_.begin(), tris_.end());
  if (std::adjacent_find(hexes_.begin(), hexes_.end()) != hexes_.end() ||
      std::adjacent_find(tris_.begin(), tris_.end()) != tris_.end())
    throw InvalidRegion("duplicate cells");
  if (hexes_.empty() && !tris_.empty()) throw InvalidRegion("region has triangles but no hexagons");
  if (tris_.size() != 2 * hexes_.size())
    throw InvalidRegion("cell count imbalance: |tris| != 2 |hexes|");

  for (int i = 0; i < num_hexes(); ++i) hex_idx_.emplace(hexes_[i], i);
  for (int i = 0; i < num_tris(); ++i) tri_idx_.emplace(tris_[i], i);

  std::set<KagomeVertex> vset;
  for (const auto& h : hexes_)
    for (const auto& d : kUnitSteps) vset.insert(KagomeVertex::between(h, h + d));
  for (const auto& t : tris_) {
    auto c = corners(t);
    for (int i = 0; i < 3; ++i) vset.insert(KagomeVertex::between(c[i], c[(i + 1) % 3]));
  }
  vertices_.assign(vset.begin(), vset.end());
  for (int i = 0; i < num_vertices(); ++i) vertex_idx_.emplace(vertices_[i], i);

  hex_ring_.resize(hexes_.size());
  hex_vertices_.resize(hexes_.size());
  for (int h = 0; h < num_hexes(); ++h)
    for (int k = 0; k < 6; ++k) {
      hex_ring_[h][k] = tri_index(tri_around(hexes_[h], k));
      hex_vertices_[h][k] = vertex_index(KagomeVertex::between(hexes_[h], hexes_[h] + kUnitSteps[k]));
    }
  tri_corners_.resize(tris_.size());
  tri_vertices_.resize(tris_.size());
  for (int t = 0; t < num_tris(); ++t) {
    auto c = corners(tris_[t]);
    for (int i = 0; i < 3; ++i) {
      tri_corners_[t][i] = hex_index(c[i]);
      tri_vertices_[t][i] = vertex_index(KagomeVertex::between(c[i], c[(i + 1) % 3]));
    }
  }

  // Edges are the incident (triangle, hexagon) pairs touching the region.
  std::set<std::pair<TriCoord, HexCoord>> eset;
  for (const auto& h : hexes_)
    for (int k = 0; k < 6; ++k) eset.emplace(tri_around(h, k), h);
  for (const auto& t : tris_)
    for (const auto& c : corners(t)) eset.emplace(t, c);
  edges_.reserve(eset.size());
  for (const auto& [t, h] : eset) {
    auto oe = oriented_edge(t, h);
    edges_.push_back({vertex_index(oe.from), vertex_index(oe.to), tri_index(t), hex_index(h)});
  }

  std::vector<std::vector<int>> incident(vertices_.size());
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    incident[edges_[e].from].push_back(e);
    incident[edges_[e].to].push_back(e);
  }
  vertex_edge_begin_.assign(1, 0);
  for (const auto& lst : incident) {
    vertex_edge_ids_.insert(vertex_edge_ids_.end(), lst.begin(), lst.end());
    vertex_edge_begin_.push_back(static_cast<int>(vertex_edge_ids_.size()));
  }

  vertex_cells_.resize(vertices_.size());
  inner_slot_.assign(vertices_.size(), -1);
  for (int v = 0; v < num_vertices(); ++v) {
    const auto ic = incident_cells(vertices_[v]);
    auto& vc = vertex_cells_[v];
    vc.t1 = tri_index(ic.t1);
    vc.h1 = hex_index(ic.h1);
    vc.t2 = tri_index(ic.t2);
    vc.h2 = hex_index(ic.h2);
    const int k = step_index(ic.h2 - ic.h1);
    vc.t1_in_h1 = static_cast<std::int8_t>(k);
    vc.t2_in_h1 = static_cast<std::int8_t>((k + 5) % 6);
    vc.t1_in_h2 = static_cast<std::int8_t>((k + 2) % 6);
    vc.t2_in_h2 = static_cast<std::int8_t>((k + 3) % 6);
    if (vc.t1 >= 0 && vc.h1 >= 0 && vc.t2 >= 0 && vc.h2 >= 0) {
      inner_slot_[v] = static_cast<int>(inner_.size());
      inner_.push_back(v);
    } else {
      boundary_.push_back(v);
    }
  }

  if (hexes_.empty()) return;

  // Edge-connectivity of cells: a triangle and a hexagon are adjacent when
  // they share a Kagome edge.
  const int ncell = num_hexes() + num_tris();
  std::vector<std::vector<int>> cell_adj(ncell);
  for (const auto& e : edges_)
    if (e.tri >= 0 && e.hex >= 0) {
      cell_adj[e.hex].push_back(num_hexes() + e.tri);
      cell_adj[num_hexes() + e.tri].push_back(e.hex);
    }
  std::vector<char> seen(ncell, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int c = q.front();
    q.pop();
    for (int d : cell_adj[c])
      if (!seen[d]) {
        seen[d] = 1;
        ++reached;
        q.push(d);
      }
  }
  if (reached != ncell) throw InvalidRegion("region is not edge-connected");

  // Count only edges of cells in the region.
  long long euler = static_cast<long long>(vertices_.size()) - static_cast<long long>(edges_.size()) + ncell;
  if (euler != 1) throw InvalidRegion("region is not simply connected");

  base_ = boundary_.front();
}

namespace {

// Union of fundamental domains hex + ring triangles k1, k2 over the given
// hexagon index set.
RegionPtr domain_union(std::string family, int n, const std::vector<HexCoord>& hexes, int k1, int k2) {
  std::vector<TriCoord> tris;
  tris.reserve(hexes.size() * 2);
  for (const auto& h : hexes) {
    tris.push_back(tri_around(h, k1));
    tris.push_back(tri_around(h, k2));
  }
  return Region::from_cells(std::move(family), n, hexes, std::move(tris));
}

}  // namespace

RegionPtr make_lozenge_region(int n) {
  if (n < 1) throw std::invalid_argument("make_lozenge_region: n must be >= 1");
  std::vector<HexCoord> hexes;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) hexes.push_back({a, b});
  return domain_union("lozenge", n, hexes, 0, 3);
}

RegionPtr make_square_region(int n) {
  if (n < 2) throw std::invalid_argument("make_square_region: n must be >= 2");
  std::vector<HexCoord> hexes;
  for (int b = 0; b < n; ++b) {
    const int a0 = -(b / 2);
    for (int a = a0; a < a0 + n; ++a) hexes.push_back({a, b});
  }
  return domain_union("square", n, hexes, 0, 3);
}

RegionPtr make_nonflat_lozenge(int n) {
  if (n < 2) throw std::invalid_argument("make_nonflat_lozenge: n must be >= 2");
  // Even rows use the lozenge domain, odd rows the fish domain on ring
  // positions 2 and 3. The fish rows tilt the boundary heights, so each side
  // becomes a sawtooth with a height drift of about 3/2 per row.
  std::vector<HexCoord> hexes;
  std::vector<TriCoord> tris;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const HexCoord h{a, b};
      hexes.push_back(h);
      tris.push_back(tri_around(h, b % 2 == 0 ? 0 : 2));
      tris.push_back(tri_around(h, 3));
    }
  return Region::from_cells("nonflat", n, std::move(hexes), std::move(tris));
}

RegionPtr make_witness_region() {
  // Four tiles cut out of the size-3 lozenge by smallest_bad_coupling.
  return Region::from_cells("witness", 0, {{1, 1}, {1, 2}, {2, 0}, {2, 1}},
                            {{0, 1, Orient::Up},
                             {0, 1, Orient::Down},
                             {1, 0, Orient::Up},
                             {1, 0, Orient::Down},
                             {1, 1, Orient::Up},
                             {1, 1, Orient::Down},
                             {2, 0, Orient::Up},
                             {2, 1, Orient::Up}});
}

RegionPtr make_region(const std::string& spec) {
  if (spec == "witness") return make_witness_region();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("region spec must look like family:n or 'witness'");
  const std::string family = spec.substr(0, colon);
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(spec.substr(colon + 1), &used);
    if (used != spec.size() - colon - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("region spec: bad size in '" + spec + "'");
  }
  if (family == "lozenge") return make_lozenge_region(n);
  if (family == "square") return make_square_region(n);
  if (family == "nonflat") return make_nonflat_lozenge(n);
  throw std::invalid_argument("unknown region family '" + family + "'");
}

}  // namespace kagome
