#include "kagome/cftp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "kagome/minimal.hpp"

namespace kagome {

namespace {

// Above lambda = 1 a fish-creating raise fires on coins where a fish-stable
// raise at the same vertex does not, so the sandwich can cross.
void require_monotone(const ChainVariant& v) {
  if (v.kind == ChainVariant::Kind::Weighted && v.lambda_num > v.lambda_den)
    throw std::invalid_argument("coupling from the past needs lambda <= 1 (got " + v.name() + ")");
}

}  // namespace

Sandwich make_sandwich(const RegionPtr& region, const ChainVariant& variant) {
  require_monotone(variant);
  const FlipSet set = variant.kind == ChainVariant::Kind::Restrained ? FlipSet::Restrained : FlipSet::All;
  auto [lo, hi] = extremal_tilings(region, set);
  return {region, variant, std::move(lo), std::move(hi)};
}

namespace {

// Two copies driven by the same seeds, with heights kept in step so that
// order checks and coalescence tests cost O(1) per step.
class SandwichRun {
 public:
  SandwichRun(const Sandwich& s, const CftpOptions& opt)
      : s_(s),
        r_(*s.region),
        opt_(opt),
        lo_(s.bottom.assign().begin(), s.bottom.assign().end()),
        hi_(s.top.assign().begin(), s.top.assign().end()),
        hlo_(height_field(s.bottom).h),
        hhi_(height_field(s.top).h) {
    for (std::size_t v = 0; v < hlo_.size(); ++v) differing_ += hlo_[v] != hhi_[v];
  }

  bool coalesced() const { return differing_ == 0; }

  void step(std::uint64_t counter, const CounterRng& rng) {
    const StepSeed seed = seed_at(r_, rng, counter);
    if (opt_.on_seed) opt_.on_seed(counter, seed);
    if (seed.vertex < 0) return;
    const int v = seed.vertex;
    const bool before = hlo_[v] != hhi_[v];
    if (const auto d = kernel::step_in_place(r_, lo_, seed, s_.variant)) hlo_[v] += *d == Direction::Raise ? 3 : -3;
    if (const auto d = kernel::step_in_place(r_, hi_, seed, s_.variant)) hhi_[v] += *d == Direction::Raise ? 3 : -3;
    differing_ += static_cast<int>(hlo_[v] != hhi_[v]) - static_cast<int>(before);
    if (opt_.monitor_order && hlo_[v] > hhi_[v])
      throw OrderViolation("sandwich order broken at vertex " + std::to_string(v) + " by step " +
                           std::to_string(counter) + " of chain " + s_.variant.name());
  }

  Tiling result() const { return Tiling::trusted(s_.region, lo_); }

 private:
  const Sandwich& s_;
  const Region& r_;
  const CftpOptions& opt_;
  std::vector<int> lo_, hi_;
  std::vector<int> hlo_, hhi_;
  int differing_ = 0;
};

}  // namespace

CftpResult cftp_sample(const Sandwich& s, std::uint64_t rng_seed, const CftpOptions& opt) {
  require_monotone(s.variant);
  const CounterRng rng(rng_seed);
  CftpResult res{s.bottom, 0, 0, 0};
  if (s.bottom == s.top) return res;
  for (std::uint64_t window = 1;; window *= 2) {
    if (res.total_steps + window > opt.budget)
      throw BudgetExceeded("cftp: budget of " + std::to_string(opt.budget) + " steps exceeded");
    SandwichRun run(s, opt);
    for (std::uint64_t t = window; t >= 1; --t) run.step(t - 1, rng);
    res.total_steps += window;
    ++res.epochs;
    if (run.coalesced()) {
      res.sample = run.result();
      res.window = window;
      return res;
    }
  }
}

CftpResult cftp_sample(const RegionPtr& region, const ChainVariant& variant, std::uint64_t rng_seed,
                       const CftpOptions& opt) {
  return cftp_sample(make_sandwich(region, variant), rng_seed, opt);
}

std::uint64_t forward_coupling_time(const Sandwich& s, std::uint64_t rng_seed, const CftpOptions& opt) {
  require_monotone(s.variant);
  const CounterRng rng(rng_seed);
  SandwichRun run(s, opt);
  std::uint64_t t = 0;
  while (!run.coalesced()) {
    if (t >= opt.budget) throw BudgetExceeded("forward coupling: budget of " + std::to_string(opt.budget) + " steps exceeded");
    run.step(t++, rng);
  }
  return t;
}

std::uint64_t forward_coupling_time(const RegionPtr& region, const ChainVariant& variant, std::uint64_t rng_seed,
                                    const CftpOptions& opt) {
  return forward_coupling_time(make_sandwich(region, variant), rng_seed, opt);
}

std::uint64_t trial_seed(std::uint64_t seed, int n, int trial) {
  return splitmix64(splitmix64(seed) ^ (static_cast<std::uint64_t>(n) << 32 | static_cast<std::uint32_t>(trial)));
}

BenchReport benchmark_scaling(const std::vector<int>& sizes, int trials, const ChainVariant& variant,
                              std::uint64_t seed, const BenchOptions& opt) {
  if (trials < 30) throw std::invalid_argument("benchmark_scaling: at least 30 trials per size are required");
  if (sizes.empty()) throw std::invalid_argument("benchmark_scaling: no sizes given");

  std::vector<Sandwich> sandwiches;
  for (int n : sizes) sandwiches.push_back(make_sandwich(make_region(opt.family + ":" + std::to_string(n)), variant));

  BenchReport rep;
  rep.rows.resize(sizes.size() * trials);
  for (std::size_t i = 0; i < sizes.size(); ++i)
    for (int k = 0; k < trials; ++k) {
      auto& row = rep.rows[i * trials + k];
      row.n = sizes[i];
      row.tiles = sandwiches[i].region->num_hexes();
      row.inner_vertices = sandwiches[i].region->num_inner();
      row.trial = k;
      row.seed = trial_seed(seed, sizes[i], k);
    }

  // Largest sizes first so the slowest trials do not straggle at the end.
  std::vector<std::size_t> order(rep.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    CftpOptions copt;
    copt.budget = opt.budget;
    copt.monitor_order = false;
    for (std::size_t j; (j = next.fetch_add(1)) < order.size();) {
      auto& row = rep.rows[order[j]];
      const auto& s = sandwiches[order[j] / trials];
      try {
        row.steps = forward_coupling_time(s, row.seed, copt);
      } catch (const BudgetExceeded&) {
        row.steps = opt.budget;
        row.over_budget = true;
      }
    }
  };
  const unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    BenchSize sz;
    sz.n = sizes[i];
    sz.tiles = sandwiches[i].region->num_hexes();
    sz.trials = trials;
    double sum = 0, sq = 0;
    for (int k = 0; k < trials; ++k) {
      const auto& row = rep.rows[i * trials + k];
      sz.flagged = sz.flagged || row.over_budget;
      sum += static_cast<double>(row.steps);
    }
    sz.mean = sum / trials;
    for (int k = 0; k < trials; ++k) {
      const double d = static_cast<double>(rep.rows[i * trials + k].steps) - sz.mean;
      sq += d * d;
    }
    sz.stderr_mean = std::sqrt(sq / (trials - 1) / trials);
    if (!sz.flagged && sz.mean > 0) {
      xs.push_back(std::log(static_cast<double>(sz.tiles)));
      ys.push_back(std::log(sz.mean));
    }
    rep.sizes.push_back(sz);
  }
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i] / n;
      my += ys[i] / n;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx > 0) {
      rep.fitted = true;
      rep.exponent = sxy / sxx;
      rep.prefactor = std::exp(my - rep.exponent * mx);
    }
  }
  return rep;
}

std::string bench_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "n,N_tiles,N_inner_vertices,trial,steps,seed\n";
  for (const auto& r : report.rows)
    out << r.n << ',' << r.tiles << ',' << r.inner_vertices << ',' << r.trial << ',' << r.steps << ',' << r.seed << '\n';
  return out.str();
}

}  // namespace kagome
