#pragma once

// Exhaustive analysis of small regions: the flip graph, exact transition
// kernels, stationary laws, mixing times and path-coupling ledgers.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "kagome/chain.hpp"
#include "kagome/tiling.hpp"

namespace kagome {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultNodeCap = 200000;
inline constexpr std::size_t kDefaultMixingCap = 5000;

// KAGOME_NODE_CAP if set to a positive integer, else the fallback.
std::size_t node_cap_from_env(std::size_t fallback = kDefaultNodeCap);

struct GraphEdge {
  int u = -1;
  int v = -1;
  int vertex = -1;          // region vertex flipped
  Direction direction{};    // seen from u
  int fish_delta = 0;       // seen from u
  bool restrained = false;
};

struct VectorHash {
  std::size_t operator()(const std::vector<int>& a) const noexcept { return hash_assignment(a); }
};

/// Flip graph over the tilings reachable from a seed. Nodes are sorted by
/// (total height, assignment), so node 0 is a height minimum.
struct TilingGraph {
  RegionPtr region;
  FlipSet kind = FlipSet::All;
  std::vector<Tiling> nodes;
  std::vector<long long> heights;  // total height per node
  std::vector<int> fish;           // fish tiles per node
  std::vector<GraphEdge> edges;    // u < v
  std::vector<std::vector<int>> incident;  // edge ids per node

  int size() const { return static_cast<int>(nodes.size()); }
  // Node id of a tiling of the same region, or -1.
  int find(const Tiling& t) const;

  std::unordered_map<std::vector<int>, int, VectorHash> index;
};

/// BFS closure from a seed tiling (any tiling for All, a fish-free one for
/// Restrained). Throws NotTileable, or CapExceeded when the closure would
/// pass the node cap.
TilingGraph enumerate(const RegionPtr& region, FlipSet kind, std::optional<std::size_t> cap = std::nullopt);

struct DiameterReport {
  int diameter = 0;  // largest over components
  bool connected = true;
  std::vector<int> component_diameters;
};

DiameterReport diameter(const TilingGraph& g);

// Node ids of the unique height extremes; nullopt if the extreme is shared.
std::optional<int> unique_min(const TilingGraph& g);
std::optional<int> unique_max(const TilingGraph& g);

/// Sparse exact transition matrix of one chain variant on the graph's nodes.
struct ExactKernel {
  struct Entry {
    int to;
    mpq_class p;
  };
  std::vector<std::vector<Entry>> moves;  // off-diagonal
  std::vector<mpq_class> stay;
};

// Probability that a coin uniform on [0, 1) fires the described flip.
mpq_class fire_probability(const ChainVariant& variant, Direction dir, int fish_delta, bool restrained);

/// Throws std::invalid_argument if the variant can leave the graph's state
/// space (General or Weighted on a restrained graph).
ExactKernel exact_kernel(const TilingGraph& g, const ChainVariant& variant);

/// Unique stationary law of the variant's kernel, exactly. Throws
/// std::domain_error when the kernel is reducible.
std::vector<mpq_class> exact_stationary(const TilingGraph& g, const ChainVariant& variant);

// pi P = pi, entrywise.
bool is_stationary(const ExactKernel& k, const std::vector<mpq_class>& pi);
// pi(x) P(x, y) = pi(y) P(y, x) for every pair.
bool satisfies_detailed_balance(const ExactKernel& k, const std::vector<mpq_class>& pi);
bool is_symmetric(const ExactKernel& k);

// lambda^{#Fish} / Z over the nodes.
std::vector<mpq_class> fish_weighted_law(const TilingGraph& g, const mpq_class& lambda);

/// Least t with max over starts of TV(P^t(x, .), pi) <= eps. Distributions
/// are evolved in long double. Throws CapExceeded above node_cap nodes or
/// past max_steps.
long long exact_mixing_time(const TilingGraph& g, const ChainVariant& variant, double eps = 0.25,
                            std::size_t node_cap = kDefaultMixingCap, long long max_steps = 10000000);

struct LedgerEntry {
  int lower = -1;  // node ids of the pair; heights differ by 3
  int upper = -1;
  int flip_vertex = -1;
  mpq_class expected_delta;
  // (region vertex, contribution) for every vertex with a nonzero term.
  std::vector<std::pair<int, mpq_class>> contributions;
  int bad_vertices = 0;  // vertices whose term is positive
};

struct Ledger {
  int inner_vertices = 0;
  std::vector<LedgerEntry> entries;  // one per graph edge, in edge order
  int worst = -1;                    // index of the largest expected_delta
  const LedgerEntry& worst_entry() const { return entries.at(worst); }
};

/// Exact E[phi' - phi] under coupled_step for every pair of tilings one flip
/// apart, where phi is the total-height gap divided by 3. The expectation is
/// over the selected inner vertex and the coin.
Ledger path_coupling_ledger(const TilingGraph& g, const ChainVariant& variant);

/// A region and a pair of its tilings one flip apart (lower has the smaller
/// total height) on which the general chain's coupling expands: four
/// vertices each push the pair apart with probability 1/2.
struct CouplingWitness {
  RegionPtr region;
  Tiling lower;
  Tiling upper;
};

/// Scans the sources in order. For every ledger entry with four expanding
/// vertices and E = +1/N_in it tries all unions of tiles of the lower tiling
/// (smallest first) and keeps the smallest sub-region on which the restricted
/// pair still has that ledger entry. Sources must have at most 16 hexagons.
std::optional<CouplingWitness> smallest_bad_coupling(const std::vector<RegionPtr>& sources);

struct HeightSpread {
  int max_distinct = 0;
  std::vector<int> per_vertex;
};

HeightSpread check_distinct_heights(const TilingGraph& g);

}  // namespace kagome
