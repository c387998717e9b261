#pragma once

// Kagome lattice geometry in integer coordinates.
//
// Hexagon cells sit on the vertices of a triangular Bravais lattice with axial
// coordinates (a, b). Triangle cells are the faces of that lattice and Kagome
// vertices are its edges (the midpoint between two adjacent hexagons). Every
// Kagome edge borders exactly one triangle and one hexagon, so it is identified
// with an incident (triangle, hexagon) pair.

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace kagome {

struct HexCoord {
  int a = 0;
  int b = 0;
  auto operator<=>(const HexCoord&) const = default;
  HexCoord operator+(const HexCoord& o) const { return {a + o.a, b + o.b}; }
  HexCoord operator-(const HexCoord& o) const { return {a - o.a, b - o.b}; }
};

enum class Orient : std::uint8_t { Up = 0, Down = 1 };

struct TriCoord {
  int a = 0;
  int b = 0;
  Orient orient = Orient::Up;
  auto operator<=>(const TriCoord&) const = default;
};

// Unordered pair of adjacent hexagons, stored with p < q.
struct KagomeVertex {
  HexCoord p;
  HexCoord q;
  auto operator<=>(const KagomeVertex&) const = default;

  static KagomeVertex between(HexCoord x, HexCoord y);
};

// The six unit steps, counter-clockwise starting at angle 0.
inline constexpr std::array<HexCoord, 6> kUnitSteps{
    {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

// Index k with kUnitSteps[k] == d, or -1.
int step_index(HexCoord d);

bool adjacent(HexCoord x, HexCoord y);

// Corners of a triangle in counter-clockwise order.
std::array<HexCoord, 3> corners(TriCoord t);

// Triangle at ring position k around h (the face spanned by h, h + step k and
// h + step k+1). Positions run counter-clockwise from angle 30 degrees.
TriCoord tri_around(HexCoord h, int k);

// Ring position of t around h, or -1 if t does not touch h.
int ring_position(HexCoord h, TriCoord t);

struct IncidentCells {
  TriCoord t1;
  HexCoord h1;
  TriCoord t2;
  HexCoord h2;
};

// The four cells around v in counter-clockwise order t1, h1, t2, h2.
// h1 = v.p, h2 = v.q; t1 lies to the left of the directed edge h1 -> h2.
IncidentCells incident_cells(const KagomeVertex& v);

// Oriented Kagome edge: clockwise on its triangle, anti-clockwise on its
// hexagon.
struct OrientedEdge {
  KagomeVertex from;
  KagomeVertex to;
};
OrientedEdge oriented_edge(TriCoord t, HexCoord h);

struct HexHash {
  std::size_t operator()(const HexCoord& h) const noexcept {
    return std::hash<std::int64_t>{}((static_cast<std::int64_t>(h.a) << 32) ^
                                     static_cast<std::uint32_t>(h.b));
  }
};
struct TriHash {
  std::size_t operator()(const TriCoord& t) const noexcept {
    return HexHash{}({t.a, t.b}) * 2 + static_cast<std::size_t>(t.orient);
  }
};
struct VertexHash {
  std::size_t operator()(const KagomeVertex& v) const noexcept {
    return HexHash{}(v.p) * 1000003u ^ HexHash{}(v.q);
  }
};

class NotTileable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidRegion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite, simply connected set of Kagome cells with indexed topology.
///
/// Cells and vertices are stored in lexicographic order so that indices are
/// canonical. All adjacency used by the tiling code is precomputed here as
/// flat index tables; an index of -1 means "outside the region".
class Region {
 public:
  struct Edge {
    int from = -1;  // vertex indices
    int to = -1;
    int tri = -1;  // cell indices, -1 when the cell is outside
    int hex = -1;
  };

  // Cells around a vertex in the order of incident_cells().
  struct VertexCells {
    int t1 = -1;
    int h1 = -1;
    int t2 = -1;
    int h2 = -1;
    // Ring positions of t1/t2 around h1 and h2.
    std::int8_t t1_in_h1 = 0, t2_in_h1 = 0, t1_in_h2 = 0, t2_in_h2 = 0;
  };

  /// Builds and validates a region. Throws InvalidRegion when the cell set is
  /// empty of hexagons, unbalanced, disconnected or has holes.
  static std::shared_ptr<const Region> from_cells(std::string family, int n,
                                                  std::vector<HexCoord> hexes,
                                                  std::vector<TriCoord> tris);

  const std::string& family() const { return family_; }
  int size_param() const { return n_; }

  std::span<const HexCoord> hexes() const { return hexes_; }
  std::span<const TriCoord> tris() const { return tris_; }
  std::span<const KagomeVertex> vertices() const { return vertices_; }
  std::span<const int> inner_vertices() const { return inner_; }
  std::span<const int> boundary_vertices() const { return boundary_; }
  std::span<const Edge> edges() const { return edges_; }

  int num_hexes() const { return static_cast<int>(hexes_.size()); }
  int num_tris() const { return static_cast<int>(tris_.size()); }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_inner() const { return static_cast<int>(inner_.size()); }

  int hex_index(HexCoord h) const;
  int tri_index(TriCoord t) const;
  int vertex_index(const KagomeVertex& v) const;

  bool is_inner(int v) const { return inner_slot_[v] >= 0; }
  // Position of v in inner_vertices(), or -1.
  int inner_slot(int v) const { return inner_slot_[v]; }
  int base_vertex() const { return base_; }

  // Triangles around hexagon h in ring order (-1 outside).
  const std::array<int, 6>& hex_ring(int h) const { return hex_ring_[h]; }
  // Hexagons at the corners of triangle t in counter-clockwise order.
  const std::array<int, 3>& tri_corners(int t) const { return tri_corners_[t]; }
  const VertexCells& cells_of(int v) const { return vertex_cells_[v]; }
  // Incident edge indices of a vertex.
  std::span<const int> vertex_edges(int v) const {
    return {vertex_edge_ids_.data() + vertex_edge_begin_[v],
            vertex_edge_ids_.data() + vertex_edge_begin_[v + 1]};
  }
  // Vertex indices of triangle t (in region) and of hexagon h.
  const std::array<int, 3>& tri_vertices(int t) const { return tri_vertices_[t]; }
  const std::array<int, 6>& hex_vertices(int h) const { return hex_vertices_[h]; }

 private:
  Region() = default;
  void build();

  std::string family_;
  int n_ = 0;
  std::vector<HexCoord> hexes_;
  std::vector<TriCoord> tris_;
  std::vector<KagomeVertex> vertices_;
  std::vector<int> inner_;
  std::vector<int> boundary_;
  std::vector<int> inner_slot_;
  std::vector<Edge> edges_;
  std::unordered_map<HexCoord, int, HexHash> hex_idx_;
  std::unordered_map<TriCoord, int, TriHash> tri_idx_;
  std::unordered_map<KagomeVertex, int, VertexHash> vertex_idx_;
  std::vector<std::array<int, 6>> hex_ring_;
  std::vector<std::array<int, 3>> tri_corners_;
  std::vector<std::array<int, 3>> tri_vertices_;
  std::vector<std::array<int, 6>> hex_vertices_;
  std::vector<VertexCells> vertex_cells_;
  std::vector<int> vertex_edge_begin_;
  std::vector<int> vertex_edge_ids_;
  int base_ = -1;
};

using RegionPtr = std::shared_ptr<const Region>;

// Region families. Each is a union of translated fundamental domains
// (one hexagon plus two triangles) over an index set of hexagons, hence
// balanced and tileable by construction.

/// Rhombus with sides 2n: hexagons (a, b) in [0, n)^2, each with its upper
/// right and lower left triangles. Rejects n < 1.
RegionPtr make_lozenge_region(int n);

/// Near-square staircase of n rows with n fundamental domains each (n^2
/// tiles). Rejects n < 2.
RegionPtr make_square_region(int n);

/// Lozenge-shaped region whose sawtooth sides carry a boundary height range
/// that grows linearly in n. Rejects n < 2.
RegionPtr make_nonflat_lozenge(int n);

/// Smallest region found to carry a pair of tilings one flip apart whose
/// general-chain coupling expands at four vertices (4 hexagons, 5 inner
/// vertices).
RegionPtr make_witness_region();

/// Parses "lozenge:3", "square:5", "nonflat:50" or "witness".
RegionPtr make_region(const std::string& spec);

}  // namespace kagome
