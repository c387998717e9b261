#include "kagome/verify.hpp"

#include <cstring>
#include <unordered_map>

#include "kagome/cftp.hpp"
#include "kagome/minimal.hpp"

namespace kagome {

namespace {

std::vector<RegionPtr> campaign_regions(const VerifyOptions& opt) {
  std::vector<std::string> specs = opt.regions;
  if (specs.empty()) specs = {"witness", "lozenge:2", "lozenge:3", "lozenge:4", "square:3", "square:5", "nonflat:3"};
  std::vector<RegionPtr> out;
  for (const auto& s : specs) out.push_back(make_region(s));
  return out;
}

void flag(PropertyReport& rep, const std::string& what) {
  if (rep.violations++ == 0) rep.first_violation = what;
}

// Walks a general chain and hands out a fresh state every `stride` steps.
class Walker {
 public:
  Walker(const RegionPtr& r, std::uint64_t seed, std::uint64_t stride)
      : state_(*find_tiling(r)), rng_(seed), stride_(stride) {}

  const Tiling& next() {
    const Region& r = state_.region();
    std::vector<int> a(state_.assign().begin(), state_.assign().end());
    for (std::uint64_t i = 0; i < stride_; ++i)
      kernel::step_in_place(r, a, seed_at(r, rng_, counter_++), ChainVariant::general());
    state_ = Tiling::trusted(state_.region_ptr(), std::move(a));
    return state_;
  }

 private:
  Tiling state_;
  CounterRng rng_;
  std::uint64_t stride_;
  std::uint64_t counter_ = 0;
};

std::string where(const Region& r, int v) {
  const auto& x = r.vertices()[v];
  return r.family() + ":" + std::to_string(r.size_param()) + " vertex (" + std::to_string(x.p.a) + "," +
         std::to_string(x.p.b) + ")-(" + std::to_string(x.q.a) + "," + std::to_string(x.q.b) + ")";
}

}  // namespace

PropertyReport verify_flip_involution(const VerifyOptions& opt) {
  PropertyReport rep;
  rep.name = "flip_involution";
  const auto regions = campaign_regions(opt);
  const std::uint64_t per = opt.operations / regions.size() + 1;
  for (std::size_t ri = 0; ri < regions.size(); ++ri) {
    const Region& r = *regions[ri];
    const CounterRng rng(opt.seed * 7919 + ri);
    Tiling t = *find_tiling(regions[ri]);
    auto h = height_field(t);
    for (std::uint64_t i = 0, done = 0; done < per; ++i) {
      const int v = r.inner_vertices()[rng.below(i, 0, r.num_inner())];
      const auto info = flip_at(t, v);
      if (!info) continue;
      ++done;
      ++rep.operations;
      const Tiling once = apply_flip(t, v);
      const Tiling twice = apply_flip(once, v);
      if (!(twice == t)) flag(rep, "double flip differs from the start at " + where(r, v));
      int changed = 0;
      for (int k = 0; k < r.num_tris(); ++k) changed += once.hex_of(k) != t.hex_of(k);
      if (changed != 2) flag(rep, "flip changed " + std::to_string(changed) + " assignments at " + where(r, v));
      const auto h1 = height_field(once);
      int moved = 0;
      for (int u = 0; u < r.num_vertices(); ++u) moved += h1.h[u] != h.h[u];
      const int expect = info->direction == Direction::Raise ? 3 : -3;
      if (moved != 1 || h1.h[v] - h.h[v] != expect) flag(rep, "flip moved heights other than +-3 at " + where(r, v));
      // Random walk: keep the flipped state half of the time.
      if (rng.below(i, 1, 2)) {
        t = once;
        h = h1;
      }
    }
  }
  rep.note = "apply_flip twice restores the tiling; one flip moves two assignments and one height by 3";
  return rep;
}

PropertyReport verify_height_cycles(const VerifyOptions& opt) {
  PropertyReport rep;
  rep.name = "height_cycles";
  const auto regions = campaign_regions(opt);
  const std::uint64_t per = opt.operations / regions.size() + 1;
  for (std::size_t ri = 0; ri < regions.size(); ++ri) {
    const Region& r = *regions[ri];
    Walker walk(regions[ri], opt.seed * 104729 + ri, 37);
    const CounterRng rng(opt.seed + 17 * ri);
    for (std::uint64_t done = 0, i = 0; done < per; ++i) {
      const Tiling& t = walk.next();
      const auto hf = height_field(t);
      // The flow around every face closes iff every edge agrees with the field.
      for (const auto& e : r.edges()) {
        const int flow = (e.tri >= 0 && e.hex >= 0 && t.hex_of(e.tri) == e.hex) ? -2 : 1;
        if (hf.h[e.to] - hf.h[e.from] != flow) flag(rep, "flow does not integrate on an edge of " + where(r, e.from));
        ++done;
        ++rep.operations;
      }
      const int start = static_cast<int>(rng.below(i, 0, r.num_vertices()));
      if (!(height_field_from(t, start, rng.below(i, 1, 2) == 1) == hf))
        flag(rep, "field depends on the integration order, start " + where(r, start));
      ++done;
      ++rep.operations;
    }
  }
  rep.note = "every edge increment matches the integrated field; start vertex and traversal order do not matter";
  return rep;
}

PropertyReport verify_boundary_invariance(const VerifyOptions& opt) {
  PropertyReport rep;
  rep.name = "boundary_invariance";
  const auto regions = campaign_regions(opt);
  const std::uint64_t per = opt.operations / regions.size() + 1;
  for (std::size_t ri = 0; ri < regions.size(); ++ri) {
    const Region& r = *regions[ri];
    const auto ref = height_field(extremal_tilings(regions[ri], FlipSet::All).first);
    Walker walk(regions[ri], opt.seed * 1299709 + ri, 23);
    for (std::uint64_t done = 0; done < per;) {
      const auto hf = height_field(walk.next());
      for (int v : r.boundary_vertices()) {
        if (hf.h[v] != ref.h[v]) flag(rep, "boundary height differs at " + where(r, v));
        ++done;
        ++rep.operations;
      }
    }
  }
  rep.note = "boundary heights of sampled tilings equal those of the minimal tiling";
  return rep;
}

PropertyReport verify_fish_delta_unit(const VerifyOptions& opt) {
  PropertyReport rep;
  rep.name = "fish_delta_unit";
  const auto regions = campaign_regions(opt);
  const std::uint64_t per = opt.operations / regions.size() + 1;
  std::uint64_t by_size[3] = {0, 0, 0};
  for (std::size_t ri = 0; ri < regions.size(); ++ri) {
    const Region& r = *regions[ri];
    Walker walk(regions[ri], opt.seed * 15485863 + ri, 11);
    for (std::uint64_t done = 0; done < per;) {
      const Tiling& t = walk.next();
      const int before = count_fish(t);
      for (int v : r.inner_vertices()) {
        const auto info = flip_at(t, v);
        if (!info) continue;
        ++done;
        ++rep.operations;
        const int actual = count_fish(apply_flip(t, v)) - before;
        if (actual != info->fish_delta) flag(rep, "reported fish_delta differs from the recount at " + where(r, v));
        const int mag = actual < 0 ? -actual : actual;
        ++by_size[mag > 2 ? 2 : mag];
        if (mag > 1) flag(rep, "flip changes the fish count by " + std::to_string(actual) + " at " + where(r, v));
      }
    }
  }
  rep.note = "flips by |fish_delta|: 0 -> " + std::to_string(by_size[0]) + ", 1 -> " + std::to_string(by_size[1]) +
             ", 2 -> " + std::to_string(by_size[2]) +
             " (two fish tiles can turn into two trapezes in one flip)";
  return rep;
}

PropertyReport verify_order_preservation(const VerifyOptions& opt) {
  PropertyReport rep;
  rep.name = "order_preservation";
  const auto regions = campaign_regions(opt);
  const std::vector<ChainVariant> variants{ChainVariant::general(), ChainVariant::restrained(),
                                           ChainVariant::weighted(1, 3), ChainVariant::weighted(1, 2),
                                           ChainVariant::weighted(1, 10)};
  const std::uint64_t per = opt.operations / (regions.size() * variants.size()) + 1;
  for (std::size_t ri = 0; ri < regions.size(); ++ri)
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
      const auto& variant = variants[vi];
      const auto s = make_sandwich(regions[ri], variant);
      if (s.bottom == s.top) continue;
      const Region& r = *regions[ri];
      const CounterRng rng(opt.seed * 2147483647ull + ri * 31 + vi);
      // Restart from the extremes each time the pair coalesces.
      std::pair<Tiling, Tiling> pair{s.bottom, s.top};
      for (std::uint64_t i = 0; i < per; ++i) {
        const StepSeed seed = seed_at(r, rng, i);
        pair = coupled_step(pair, seed, variant);
        ++rep.operations;
        if (!pointwise_leq(height_field(pair.first), height_field(pair.second)))
          flag(rep, variant.name() + " broke pointwise order at " + where(r, seed.vertex));
        if (pair.first == pair.second) pair = {s.bottom, s.top};
      }
    }
  rep.note = "coupled steps from the (minimum, maximum) pair keep lower <= upper pointwise, all chains";
  return rep;
}

PropertyReport verify_cftp_seed_reuse(const VerifyOptions& opt) {
  PropertyReport rep;
  rep.name = "cftp_seed_reuse";
  const std::vector<std::string> specs{"lozenge:3", "square:4", "nonflat:3", "witness"};
  std::vector<Sandwich> sandwiches;
  for (const auto& s : specs) sandwiches.push_back(make_sandwich(make_region(s), ChainVariant::general()));
  for (std::uint64_t run = 0; rep.operations < opt.operations; ++run) {
    const auto& s = sandwiches[run % sandwiches.size()];
    std::unordered_map<std::uint64_t, StepSeed> first;
    CftpOptions copt;
    copt.on_seed = [&](std::uint64_t counter, const StepSeed& seed) {
      auto [it, fresh] = first.emplace(counter, seed);
      if (fresh) return;
      ++rep.operations;
      if (it->second.vertex != seed.vertex || std::memcmp(&it->second.coin, &seed.coin, sizeof(double)) != 0)
        flag(rep, "counter " + std::to_string(counter) + " drew a different seed in a later epoch");
    };
    cftp_sample(s, opt.seed * 6700417 + run, copt);
  }
  rep.note = "every epoch replays bit-identical seeds at each absolute time index";
  return rep;
}

std::vector<PropertyReport> verify_all(const VerifyOptions& opt) {
  return {verify_flip_involution(opt), verify_height_cycles(opt),     verify_boundary_invariance(opt),
          verify_fish_delta_unit(opt), verify_order_preservation(opt), verify_cftp_seed_reuse(opt)};
}

}  // namespace kagome
