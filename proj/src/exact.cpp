#include "kagome/exact.hpp"

#include <algorithm>
#include <tuple>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <numeric>

#include "kagome/minimal.hpp"

namespace kagome {

std::size_t node_cap_from_env(std::size_t fallback) {
  const char* env = std::getenv("KAGOME_NODE_CAP");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw std::invalid_argument(std::string("KAGOME_NODE_CAP is not a positive integer: ") + env);
  return static_cast<std::size_t>(v);
}

int TilingGraph::find(const Tiling& t) const {
  if (t.region_ptr() != region) return -1;
  const std::vector<int> key(t.assign().begin(), t.assign().end());
  const auto it = index.find(key);
  return it == index.end() ? -1 : it->second;
}

namespace {

bool eligible(const Region& r, std::span<const int> a, int v, FlipSet kind) {
  if (!kernel::flip_direction(r, a, v)) return false;
  return kind == FlipSet::All || kernel::describe_flip(r, a, v).restrained;
}

Tiling seed_tiling(const RegionPtr& region, FlipSet kind) {
  if (kind == FlipSet::All) {
    auto t = find_tiling(region);
    if (!t) throw NotTileable("region has no tiling");
    return *t;
  }
  if (region->family() == "lozenge") return contour_peel_minimal(region);
  auto t = find_restrained_tiling(region);
  if (!t) throw NotTileable("region has no restrained tiling");
  return *t;
}

}  // namespace

TilingGraph enumerate(const RegionPtr& region, FlipSet kind, std::optional<std::size_t> cap) {
  const std::size_t limit = cap.value_or(node_cap_from_env());
  const Region& r = *region;
  const Tiling seed = seed_tiling(region, kind);

  std::vector<std::vector<int>> found;
  std::unordered_map<std::vector<int>, int, VectorHash> seen;
  found.emplace_back(seed.assign().begin(), seed.assign().end());
  seen.emplace(found.back(), 0);
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (int v : r.inner_vertices()) {
      if (!eligible(r, found[head], v, kind)) continue;
      std::vector<int> next = found[head];
      kernel::flip_in_place(r, next, v);
      if (seen.count(next)) continue;
      if (found.size() >= limit)
        throw CapExceeded("flip graph exceeds the node cap of " + std::to_string(limit));
      seen.emplace(next, static_cast<int>(found.size()));
      found.push_back(std::move(next));
    }
  }

  TilingGraph g;
  g.region = region;
  g.kind = kind;
  std::vector<long long> h(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) h[i] = total_height(Tiling::trusted(region, found[i]));
  std::vector<int> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return h[x] != h[y] ? h[x] < h[y] : found[x] < found[y]; });

  g.nodes.reserve(found.size());
  for (int i : order) {
    g.index.emplace(found[i], static_cast<int>(g.nodes.size()));
    g.heights.push_back(h[i]);
    g.nodes.push_back(Tiling::trusted(region, std::move(found[i])));
    g.fish.push_back(count_fish(g.nodes.back()));
  }
  g.incident.resize(g.nodes.size());
  for (int u = 0; u < g.size(); ++u) {
    const auto a = g.nodes[u].assign();
    for (int v : r.inner_vertices()) {
      if (!eligible(r, a, v, kind)) continue;
      std::vector<int> next(a.begin(), a.end());
      kernel::flip_in_place(r, next, v);
      const int w = g.index.at(next);
      if (w < u) continue;
      const FlipInfo info = kernel::describe_flip(r, a, v);
      g.incident[u].push_back(static_cast<int>(g.edges.size()));
      g.incident[w].push_back(static_cast<int>(g.edges.size()));
      g.edges.push_back({u, w, v, info.direction, info.fish_delta, info.restrained});
    }
  }
  return g;
}

DiameterReport diameter(const TilingGraph& g) {
  const int n = g.size();
  std::vector<int> comp(n, -1);
  DiameterReport rep;
  std::vector<int> dist(n, -1);
  std::vector<int> queue(n);
  std::vector<int> touched;
  std::vector<int> begin(n + 1, 0), adj;
  adj.reserve(2 * g.edges.size());
  for (int u = 0; u < n; ++u) {
    for (int e : g.incident[u]) adj.push_back(g.edges[e].u == u ? g.edges[e].v : g.edges[e].u);
    begin[u + 1] = static_cast<int>(adj.size());
  }
  // BFS from s; leaves the visit order in queue[0, reached) and returns
  // (eccentricity, reached, farthest node).
  auto bfs = [&](int s) {
    for (int i : touched) dist[i] = -1;
    dist[s] = 0;
    int head = 0, tail = 0, far = 0;
    queue[tail++] = s;
    while (head < tail) {
      const int u = queue[head++];
      if (dist[u] > dist[far]) far = u;
      for (int k = begin[u]; k < begin[u + 1]; ++k) {
        const int w = adj[k];
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue[tail++] = w;
        }
      }
    }
    touched.assign(queue.begin(), queue.begin() + tail);
    return std::tuple{dist[far], tail, far};
  };
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    // iFUB: exact eccentricities of the deepest BFS layers of a central root
    // close the gap between 2*depth and the best eccentricity seen.
    const auto [e0, reached, far] = bfs(s);
    (void)e0;
    for (int i = 0; i < reached; ++i) comp[queue[i]] = static_cast<int>(rep.component_diameters.size());
    // Root halfway out from the far end of a double sweep; any root keeps
    // iFUB exact.
    const int e1 = std::get<0>(bfs(far));
    const int r1 = static_cast<int>(touched.size());
    int root = far;
    for (int i = 0; i < r1; ++i)
      if (dist[queue[i]] == e1 / 2) {
        root = queue[i];
        break;
      }
    int lb = e1;
    const auto [eroot, rr, unused] = bfs(root);
    (void)unused;
    std::vector<std::vector<int>> levels(eroot + 1);
    for (int i = 0; i < rr; ++i) levels[dist[queue[i]]].push_back(queue[i]);
    lb = std::max(lb, eroot);
    int ub = 2 * eroot;
    for (int i = eroot; i > 0 && ub > lb; --i) {
      int bi = 0;
      for (int v : levels[i]) bi = std::max(bi, std::get<0>(bfs(v)));
      lb = std::max(lb, bi);
      if (lb > 2 * (i - 1)) break;
      ub = 2 * (i - 1);
    }
    rep.component_diameters.push_back(lb);
  }
  rep.connected = rep.component_diameters.size() <= 1;
  for (int d : rep.component_diameters) rep.diameter = std::max(rep.diameter, d);
  return rep;
}

std::optional<int> unique_min(const TilingGraph& g) {
  if (g.size() == 0) return std::nullopt;
  if (g.size() > 1 && g.heights[1] == g.heights[0]) return std::nullopt;
  return 0;
}

std::optional<int> unique_max(const TilingGraph& g) {
  const int n = g.size();
  if (n == 0) return std::nullopt;
  if (n > 1 && g.heights[n - 2] == g.heights[n - 1]) return std::nullopt;
  return n - 1;
}

namespace {

// 1 / (1 + lambda^k), exactly.
mpq_class destroy_threshold(const ChainVariant& v, int k) {
  mpq_class lambda(v.lambda_num, v.lambda_den);
  lambda.canonicalize();
  mpq_class l = 1;
  for (int i = 0; i < k; ++i) l *= lambda;
  return 1 / (1 + l);
}

// Breakpoints of the coin where some variant's decision can change.
std::vector<mpq_class> coin_breakpoints(const ChainVariant& variant) {
  std::vector<mpq_class> pts{mpq_class(0), mpq_class(1, 2), mpq_class(1)};
  if (variant.kind == ChainVariant::Kind::Weighted) {
    for (int k : {1, 2}) {
      pts.push_back(destroy_threshold(variant, k));
      pts.push_back(1 - destroy_threshold(variant, k));
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}


// Flip available at v, if any, with the data the step rule needs.
struct LocalFlip {
  bool present = false;
  Direction dir{};
  int fish_delta = 0;
  bool restrained = false;
};

LocalFlip local_flip(const Region& r, std::span<const int> a, int v) {
  const auto dir = kernel::flip_direction(r, a, v);
  if (!dir) return {};
  const FlipInfo info = kernel::describe_flip(r, a, v);
  return {true, *dir, info.fish_delta, info.restrained};
}

}  // namespace

mpq_class fire_probability(const ChainVariant& variant, Direction dir, int fish_delta, bool restrained) {
  const auto pts = coin_breakpoints(variant);
  const mpq_class half(1, 2), destroy1 = destroy_threshold(variant, 1),
                  destroy2 = destroy_threshold(variant, 2);
  mpq_class p = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const mpq_class mid = (pts[i] + pts[i + 1]) / 2;
    if (flip_fires(variant.kind, dir, fish_delta, restrained, mid, half, destroy1, destroy2)) p += pts[i + 1] - pts[i];
  }
  return p;
}

ExactKernel exact_kernel(const TilingGraph& g, const ChainVariant& variant) {
  if (g.kind == FlipSet::Restrained && variant.kind != ChainVariant::Kind::Restrained)
    throw std::invalid_argument("exact_kernel: only the restrained chain stays on a restrained flip graph");
  const Region& r = *g.region;
  const mpq_class pick(1, std::max(1, r.num_inner()));
  ExactKernel k;
  k.moves.resize(g.size());
  k.stay.assign(g.size(), mpq_class(1));
  for (const auto& e : g.edges) {
    const int back_fish = -e.fish_delta;
    const mpq_class fwd = pick * fire_probability(variant, e.direction, e.fish_delta, e.restrained);
    const mpq_class bwd = pick * fire_probability(variant, opposite(e.direction), back_fish, e.restrained);
    if (fwd != 0) {
      k.moves[e.u].push_back({e.v, fwd});
      k.stay[e.u] -= fwd;
    }
    if (bwd != 0) {
      k.moves[e.v].push_back({e.u, bwd});
      k.stay[e.v] -= bwd;
    }
  }
  return k;
}

bool is_stationary(const ExactKernel& k, const std::vector<mpq_class>& pi) {
  const std::size_t n = k.stay.size();
  if (pi.size() != n) return false;
  std::vector<mpq_class> out(n);
  for (std::size_t x = 0; x < n; ++x) {
    out[x] += pi[x] * k.stay[x];
    for (const auto& m : k.moves[x]) out[m.to] += pi[x] * m.p;
  }
  return out == pi;
}

namespace {

const mpq_class* find_move(const ExactKernel& k, int from, int to) {
  for (const auto& m : k.moves[from])
    if (m.to == to) return &m.p;
  return nullptr;
}

}  // namespace

bool satisfies_detailed_balance(const ExactKernel& k, const std::vector<mpq_class>& pi) {
  for (std::size_t x = 0; x < k.moves.size(); ++x)
    for (const auto& m : k.moves[x]) {
      const mpq_class* back = find_move(k, m.to, static_cast<int>(x));
      if (!back || pi[x] * m.p != pi[m.to] * *back) return false;
    }
  return true;
}

bool is_symmetric(const ExactKernel& k) {
  for (std::size_t x = 0; x < k.moves.size(); ++x)
    for (const auto& m : k.moves[x]) {
      const mpq_class* back = find_move(k, m.to, static_cast<int>(x));
      if (!back || *back != m.p) return false;
    }
  return true;
}

namespace {

bool irreducible(const ExactKernel& k) {
  const std::size_t n = k.moves.size();
  if (n == 0) return false;
  // Moves come in reverse pairs for every chain here, but check both
  // directions so the test does not depend on it.
  auto reach = [&](bool reverse) {
    std::vector<std::vector<int>> adj(n);
    for (std::size_t x = 0; x < n; ++x)
      for (const auto& m : k.moves[x]) {
        if (reverse) adj[m.to].push_back(static_cast<int>(x));
        else adj[x].push_back(m.to);
      }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    return count == n;
  };
  return reach(false) && reach(true);
}

// Solves pi (P - I) = 0, sum pi = 1 by exact Gaussian elimination.
std::vector<mpq_class> solve_balance(const ExactKernel& k) {
  const std::size_t n = k.stay.size();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1));
  // Row y: sum_x pi(x) (P(x, y) - [x == y]) = 0; last row replaced by normalization.
  for (std::size_t x = 0; x < n; ++x) {
    m[x][x] += k.stay[x] - 1;
    for (const auto& e : k.moves[x]) m[e.to][x] += e.p;
  }
  for (std::size_t x = 0; x < n; ++x) m[n - 1][x] = 1;
  m[n - 1][n] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw std::domain_error("exact_stationary: singular balance system");
    std::swap(m[piv], m[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const mpq_class f = m[row][col] / m[col][col];
      for (std::size_t j = col; j <= n; ++j) m[row][j] -= f * m[col][j];
    }
  }
  std::vector<mpq_class> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = m[i][n] / m[i][i];
  return pi;
}

}  // namespace

std::vector<mpq_class> exact_stationary(const TilingGraph& g, const ChainVariant& variant) {
  const ExactKernel k = exact_kernel(g, variant);
  const int n = g.size();
  if (n == 1) return {mpq_class(1)};
  if (!irreducible(k)) throw std::domain_error("exact_stationary: kernel is reducible");

  // Reversible chains: propagate pi(w) = pi(u) P(u, w) / P(w, u) along a
  // spanning tree, then confirm global balance.
  std::vector<mpq_class> pi(n);
  std::vector<char> seen(n, 0);
  std::deque<int> queue{0};
  pi[0] = 1;
  seen[0] = 1;
  bool tree_ok = true;
  while (!queue.empty() && tree_ok) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& m : k.moves[u]) {
      if (seen[m.to]) continue;
      const mpq_class* back = find_move(k, m.to, u);
      if (!back) {
        tree_ok = false;
        break;
      }
      pi[m.to] = pi[u] * m.p / *back;
      seen[m.to] = 1;
      queue.push_back(m.to);
    }
  }
  if (tree_ok) {
    mpq_class z = 0;
    for (const auto& p : pi) z += p;
    for (auto& p : pi) p /= z;
    if (is_stationary(k, pi)) return pi;
  }
  if (n > 2000) throw std::domain_error("exact_stationary: chain is not reversible and too large to solve densely");
  return solve_balance(k);
}

std::vector<mpq_class> fish_weighted_law(const TilingGraph& g, const mpq_class& lambda) {
  std::vector<mpq_class> pi(g.size());
  mpq_class z = 0;
  for (int i = 0; i < g.size(); ++i) {
    mpq_class w = 1;
    for (int j = 0; j < g.fish[i]; ++j) w *= lambda;
    pi[i] = w;
    z += w;
  }
  for (auto& p : pi) p /= z;
  return pi;
}

long long exact_mixing_time(const TilingGraph& g, const ChainVariant& variant, double eps, std::size_t node_cap,
                            long long max_steps) {
  if (static_cast<std::size_t>(g.size()) > node_cap)
    throw CapExceeded("exact_mixing_time: " + std::to_string(g.size()) + " states exceed the cap of " +
                      std::to_string(node_cap));
  if (!(eps > 0)) throw std::invalid_argument("exact_mixing_time: eps must be positive");
  if (eps >= 1) return 0;
  const ExactKernel k = exact_kernel(g, variant);
  const auto exact_pi = exact_stationary(g, variant);
  const int n = g.size();
  std::vector<long double> pi(n), stay(n);
  std::vector<std::vector<std::pair<int, long double>>> moves(n);
  for (int x = 0; x < n; ++x) {
    pi[x] = exact_pi[x].get_d();
    stay[x] = k.stay[x].get_d();
    for (const auto& m : k.moves[x]) moves[x].emplace_back(m.to, static_cast<long double>(m.p.get_d()));
  }
  auto tv = [&](const std::vector<long double>& mu) {
    long double s = 0;
    for (int i = 0; i < n; ++i) s += std::fabs(mu[i] - pi[i]);
    return s / 2;
  };

  // TV distance from each start is nonincreasing in t, so the first time it
  // drops to eps is the per-start answer.
  long long worst = 0;
  std::vector<long double> mu(n), next(n);
  for (int x = 0; x < n; ++x) {
    std::fill(mu.begin(), mu.end(), 0.0L);
    mu[x] = 1;
    long long t = 0;
    while (tv(mu) > eps) {
      if (++t > max_steps) throw CapExceeded("exact_mixing_time: no convergence within the step limit");
      for (int i = 0; i < n; ++i) next[i] = mu[i] * stay[i];
      for (int i = 0; i < n; ++i)
        if (mu[i] != 0)
          for (const auto& [j, p] : moves[i]) next[j] += mu[i] * p;
      mu.swap(next);
    }
    worst = std::max(worst, t);
  }
  return worst;
}

Ledger path_coupling_ledger(const TilingGraph& g, const ChainVariant& variant) {
  if (g.kind == FlipSet::Restrained && variant.kind != ChainVariant::Kind::Restrained)
    throw std::invalid_argument("path_coupling_ledger: only the restrained chain stays on a restrained flip graph");
  const Region& r = *g.region;
  Ledger ledger;
  ledger.inner_vertices = r.num_inner();
  const mpq_class pick(1, std::max(1, r.num_inner()));
  const auto pts = coin_breakpoints(variant);
  const mpq_class half(1, 2), destroy1 = destroy_threshold(variant, 1),
                  destroy2 = destroy_threshold(variant, 2);

  std::vector<mpq_class> mids, lengths;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    mids.push_back((pts[i] + pts[i + 1]) / 2);
    lengths.push_back(pts[i + 1] - pts[i]);
  }
  auto height_change = [&](const LocalFlip& f, const mpq_class& coin) {
    if (!f.present) return 0;
    if (!flip_fires(variant.kind, f.dir, f.fish_delta, f.restrained, coin, half, destroy1, destroy2)) return 0;
    return f.dir == Direction::Raise ? 3 : -3;
  };

  ledger.entries.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    LedgerEntry entry;
    entry.lower = g.heights[e.u] <= g.heights[e.v] ? e.u : e.v;
    entry.upper = entry.lower == e.u ? e.v : e.u;
    entry.flip_vertex = e.vertex;
    const auto a = g.nodes[entry.lower].assign();
    const auto b = g.nodes[entry.upper].assign();
    const long long gap = g.heights[entry.upper] - g.heights[entry.lower];
    for (int v : r.inner_vertices()) {
      const LocalFlip fa = local_flip(r, a, v), fb = local_flip(r, b, v);
      if (!fa.present && !fb.present) continue;
      mpq_class term = 0;
      for (std::size_t i = 0; i < mids.size(); ++i) {
        const long long next_gap = gap + height_change(fb, mids[i]) - height_change(fa, mids[i]);
        term += lengths[i] * mpq_class(static_cast<long>(std::llabs(next_gap) / 3 - gap / 3));
      }
      if (term == 0) continue;
      term *= pick;
      if (term > 0) ++entry.bad_vertices;
      entry.expected_delta += term;
      entry.contributions.emplace_back(v, term);
    }
    ledger.entries.push_back(std::move(entry));
  }
  for (std::size_t i = 0; i < ledger.entries.size(); ++i)
    if (ledger.worst < 0 || ledger.entries[i].expected_delta > ledger.entries[ledger.worst].expected_delta)
      ledger.worst = static_cast<int>(i);
  return ledger;
}

namespace {

bool is_bad_coupling(const LedgerEntry& e, int inner) {
  return e.bad_vertices == 4 && e.expected_delta * inner == 1;
}

}  // namespace

std::optional<CouplingWitness> smallest_bad_coupling(const std::vector<RegionPtr>& sources) {
  std::optional<CouplingWitness> best;
  int best_hexes = 0;
  for (const auto& src : sources) {
    const Region& r = *src;
    const int nh = r.num_hexes();
    if (nh > 16) throw std::invalid_argument("smallest_bad_coupling: source region too large to scan");
    const TilingGraph g = enumerate(src, FlipSet::All);
    const Ledger ledger = path_coupling_ledger(g, ChainVariant::general());
    std::vector<int> masks(1u << nh);
    std::iota(masks.begin(), masks.end(), 0);
    std::stable_sort(masks.begin(), masks.end(),
                     [](int x, int y) { return __builtin_popcount(x) < __builtin_popcount(y); });
    for (const auto& e : ledger.entries) {
      if (!is_bad_coupling(e, ledger.inner_vertices)) continue;
      const Tiling& lo = g.nodes[e.lower];
      const Tiling& hi = g.nodes[e.upper];
      for (int mask : masks) {
        const int size = __builtin_popcount(mask);
        if (best && size >= best_hexes) break;
        std::vector<HexCoord> hexes;
        std::vector<TriCoord> tris;
        bool same_cells = true;
        for (int h = 0; h < nh; ++h)
          if (mask >> h & 1) hexes.push_back(r.hexes()[h]);
        for (int t = 0; t < r.num_tris(); ++t) {
          const bool in_lo = mask >> lo.hex_of(t) & 1, in_hi = mask >> hi.hex_of(t) & 1;
          same_cells = same_cells && in_lo == in_hi;
          if (in_lo) tris.push_back(r.tris()[t]);
        }
        if (!same_cells || hexes.empty()) continue;
        RegionPtr sub;
        try {
          sub = Region::from_cells("witness", 0, hexes, tris);
        } catch (const InvalidRegion&) {
          continue;
        }
        auto restrict_to = [&](const Tiling& t) {
          std::vector<int> a(sub->num_tris());
          for (int i = 0; i < sub->num_tris(); ++i)
            a[i] = sub->hex_index(r.hexes()[t.hex_of(r.tri_index(sub->tris()[i]))]);
          return Tiling(sub, std::move(a));
        };
        const Tiling sub_lo = restrict_to(lo), sub_hi = restrict_to(hi);
        const TilingGraph sg = enumerate(sub, FlipSet::All);
        const Ledger sl = path_coupling_ledger(sg, ChainVariant::general());
        const int il = sg.find(sub_lo), ih = sg.find(sub_hi);
        for (const auto& f : sl.entries)
          if (f.lower == il && f.upper == ih && is_bad_coupling(f, sl.inner_vertices)) {
            best = CouplingWitness{sub, sub_lo, sub_hi};
            best_hexes = size;
            break;
          }
      }
    }
  }
  return best;
}

HeightSpread check_distinct_heights(const TilingGraph& g) {
  const int nv = g.region->num_vertices();
  std::vector<std::vector<int>> seen(nv);
  for (const auto& t : g.nodes) {
    const auto hf = height_field(t);
    for (int v = 0; v < nv; ++v) seen[v].push_back(hf.h[v]);
  }
  HeightSpread s;
  s.per_vertex.resize(nv);
  for (int v = 0; v < nv; ++v) {
    auto& hs = seen[v];
    std::sort(hs.begin(), hs.end());
    s.per_vertex[v] = static_cast<int>(std::unique(hs.begin(), hs.end()) - hs.begin());
    s.max_distinct = std::max(s.max_distinct, s.per_vertex[v]);
  }
  return s;
}

}  // namespace kagome
