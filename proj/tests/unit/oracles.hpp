#pragma once

// Independent reference computations for the unit tests. They use only the
// public tiling API (flip_at, apply_flip, step, count_fish) and never the
// exact-analysis internals they are compared against.

#include <Eigen/Dense>
#include <doctest.h>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "kagome/chain.hpp"
#include "kagome/exact.hpp"

namespace oracle {

using namespace kagome;

// Number of tilings by plain exact-cover backtracking over triangles.
inline long long count_tilings(const Region& r) {
  std::vector<int> load(r.num_hexes(), 0);
  long long count = 0;
  auto rec = [&](auto&& self, int t) -> void {
    if (t == r.num_tris()) {
      for (int x : load)
        if (x != 2) return;
      ++count;
      return;
    }
    for (int h : r.tri_corners(t)) {
      if (h < 0 || load[h] == 2) continue;
      ++load[h];
      self(self, t + 1);
      --load[h];
    }
  };
  rec(rec, 0);
  return count;
}

inline double lambda_pow(const ChainVariant& v, int k) { return std::pow(v.lambda(), k); }

// Probability that the flip at v fires, from the chain's verbal definition.
inline double firing_probability(const Tiling& t, int v, const ChainVariant& variant) {
  const auto info = flip_at(t, v);
  if (!info) return 0;
  const Tiling after = apply_flip(t, v);
  const int fd = count_fish(after) - count_fish(t);
  switch (variant.kind) {
    case ChainVariant::Kind::General: return 0.5;
    case ChainVariant::Kind::Restrained: {
      // Neither of the two hexagons is a fish before or after.
      const auto& c = t.region().cells_of(v);
      for (int h : {c.h1, c.h2})
        if (classify_tile(t, h) == TileType::Fish || classify_tile(after, h) == TileType::Fish) return 0;
      return 0.5;
    }
    case ChainVariant::Kind::Weighted: {
      if (fd == 0) return 0.5;
      const double w = lambda_pow(variant, std::abs(fd));
      return fd < 0 ? 1 / (1 + w) : w / (1 + w);
    }
  }
  return 0;
}

// Dense transition matrix on the graph's nodes.
inline Eigen::MatrixXd dense_kernel(const TilingGraph& g, const ChainVariant& variant) {
  const int n = g.size();
  const Region& r = *g.region;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    double out = 0;
    for (int v : r.inner_vertices()) {
      const double q = firing_probability(g.nodes[x], v, variant) / r.num_inner();
      if (q == 0) continue;
      const int y = g.find(apply_flip(g.nodes[x], v));
      REQUIRE(y >= 0);
      p(x, y) += q;
      out += q;
    }
    p(x, x) += 1 - out;
  }
  return p;
}

inline Eigen::VectorXd weighted_law(const TilingGraph& g, double lambda) {
  Eigen::VectorXd pi(g.size());
  for (int x = 0; x < g.size(); ++x) pi[x] = std::pow(lambda, count_fish(g.nodes[x]));
  return pi / pi.sum();
}

// Least t with max_x TV(P^t(x, .), pi) <= eps, by repeated dense products.
inline long long mixing_time(const Eigen::MatrixXd& p, const Eigen::VectorXd& pi, double eps) {
  Eigen::MatrixXd pt = Eigen::MatrixXd::Identity(p.rows(), p.cols());
  for (long long t = 0; t < 1000000; ++t) {
    double worst = 0;
    for (int x = 0; x < p.rows(); ++x) worst = std::max(worst, 0.5 * (pt.row(x).transpose() - pi).cwiseAbs().sum());
    if (worst <= eps) return t;
    pt = pt * p;
  }
  return -1;
}

// Coin breakpoints covering every decision of every variant.
inline std::vector<mpq_class> breakpoints(const ChainVariant& v) {
  std::set<mpq_class> pts{mpq_class(0), mpq_class(1, 2), mpq_class(1)};
  const mpq_class l(static_cast<long>(v.lambda_num), static_cast<long>(v.lambda_den));
  for (const mpq_class& w : {mpq_class(l), mpq_class(l * l)}) {
    pts.insert(1 / (1 + w));
    pts.insert(w / (1 + w));
  }
  return {pts.begin(), pts.end()};
}

// E[phi' - phi] for one pair one flip apart, by stepping both tilings with
// every (vertex, coin interval) and measuring the total-height gap.
inline mpq_class ledger_entry(const Tiling& lower, const Tiling& upper, const ChainVariant& variant) {
  const Region& r = lower.region();
  const auto pts = breakpoints(variant);
  const long long gap = (total_height(upper) - total_height(lower)) / 3;
  mpq_class sum = 0;
  for (int v : r.inner_vertices())
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const mpq_class mid = (pts[i] + pts[i + 1]) / 2;
      const StepSeed seed{v, mid.get_d()};
      const long long g2 = std::llabs(total_height(step(upper, seed, variant)) - total_height(step(lower, seed, variant))) / 3;
      sum += (pts[i + 1] - pts[i]) * mpq_class(static_cast<long>(g2 - gap));
    }
  return sum / r.num_inner();
}

// Expected forward coupling time of the (bottom, top) pair, solving the
// absorbing product chain.
inline double expected_coupling_time(const Tiling& bottom, const Tiling& top, const ChainVariant& variant) {
  const Region& r = bottom.region();
  const auto pts = breakpoints(variant);
  std::map<std::pair<std::vector<int>, std::vector<int>>, int> index;
  std::vector<std::pair<Tiling, Tiling>> states;
  auto key = [](const Tiling& a, const Tiling& b) {
    return std::pair{std::vector<int>(a.assign().begin(), a.assign().end()),
                     std::vector<int>(b.assign().begin(), b.assign().end())};
  };
  auto id = [&](const Tiling& a, const Tiling& b) {
    auto [it, fresh] = index.emplace(key(a, b), static_cast<int>(states.size()));
    if (fresh) states.emplace_back(a, b);
    return it->second;
  };
  id(bottom, top);
  std::vector<std::vector<std::pair<int, double>>> moves;
  for (std::size_t s = 0; s < states.size(); ++s) {
    moves.emplace_back();
    if (states[s].first == states[s].second) continue;
    for (int v : r.inner_vertices())
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const StepSeed seed{v, mpq_class((pts[i] + pts[i + 1]) / 2).get_d()};
        const auto next = coupled_step(states[s], seed, variant);
        const double q = mpq_class(pts[i + 1] - pts[i]).get_d() / r.num_inner();
        const int t = id(next.first, next.second);
        moves[s].emplace_back(t, q);
      }
  }
  const int n = static_cast<int>(states.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  for (int s = 0; s < n; ++s) {
    if (states[s].first == states[s].second) continue;
    b[s] = 1;
    for (auto [t, q] : moves[s]) a(s, t) -= q;
  }
  const Eigen::VectorXd e = a.partialPivLu().solve(b);
  return e[0];
}

}  // namespace oracle
