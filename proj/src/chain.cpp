#include "kagome/chain.hpp"

#include <cmath>
#include <stdexcept>

namespace kagome {

ChainVariant ChainVariant::weighted(std::int64_t num, std::int64_t den) {
  if (num <= 0 || den <= 0) throw std::invalid_argument("fish weight must be a positive fraction");
  return {Kind::Weighted, num, den};
}

namespace {

std::pair<std::int64_t, std::int64_t> parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t u1 = 0, u2 = 0;
      const long long num = std::stoll(s.substr(0, slash), &u1);
      const long long den = std::stoll(s.substr(slash + 1), &u2);
      if (u1 != slash || u2 != s.size() - slash - 1) throw std::invalid_argument(s);
      return {num, den};
    }
    // Decimal: exact when the value has at most 9 fractional digits.
    const auto dot = s.find('.');
    std::size_t used = 0;
    if (dot == std::string::npos) {
      const long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {v, 1};
    }
    const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t frac = s.size() - dot - 1;
    if (frac > 9) throw std::invalid_argument(s);
    const long long v = std::stoll(digits, &used);
    if (used != digits.size()) throw std::invalid_argument(s);
    long long den = 1;
    for (std::size_t i = 0; i < frac; ++i) den *= 10;
    return {v, den};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("cannot parse fish weight '" + s + "'");
  }
}

}  // namespace

ChainVariant ChainVariant::parse(const std::string& text) {
  if (text == "general") return general();
  if (text == "restrained") return restrained();
  if (text.rfind("weighted:", 0) == 0) {
    auto [num, den] = parse_fraction(text.substr(9));
    std::int64_t a = num, b = den;
    while (b != 0) {
      const std::int64_t t = a % b;
      a = b;
      b = t;
    }
    if (a < 0) a = -a;
    if (a == 0) throw std::invalid_argument("fish weight must be positive");
    return weighted(num / a, den / a);
  }
  throw std::invalid_argument("unknown chain variant '" + text + "'");
}

std::string ChainVariant::name() const {
  switch (kind) {
    case Kind::General: return "general";
    case Kind::Restrained: return "restrained";
    default: return "weighted:" + std::to_string(lambda_num) + "/" + std::to_string(lambda_den);
  }
}

StepSeed seed_at(const Region& r, const CounterRng& rng, std::uint64_t index) {
  const auto inner = r.inner_vertices();
  if (inner.empty()) return {};
  return {inner[rng.below(index, 0, static_cast<std::uint32_t>(inner.size()))], rng.unit(index, 1)};
}

namespace kernel {

std::optional<Direction> step_in_place(const Region& r, std::span<int> assign, const StepSeed& seed,
                                       const ChainVariant& variant) {
  if (seed.vertex < 0) return std::nullopt;
  const auto dir = flip_direction(r, assign, seed.vertex);
  if (!dir) return std::nullopt;
  int fish_delta = 0;
  bool restrained = false;
  if (variant.kind != ChainVariant::Kind::General) {
    const FlipInfo info = describe_flip(r, assign, seed.vertex);
    fish_delta = info.fish_delta;
    restrained = info.restrained;
  }
  if (!flip_fires(variant.kind, *dir, fish_delta, restrained, seed.coin, 0.5, variant.destroy_threshold(1),
                  variant.destroy_threshold(2)))
    return std::nullopt;
  flip_in_place(r, assign, seed.vertex);
  return dir;
}

}  // namespace kernel

Tiling step(const Tiling& t, const StepSeed& seed, const ChainVariant& variant) {
  if (seed.vertex < 0 || seed.vertex >= t.region().num_vertices() || !t.region().is_inner(seed.vertex))
    throw std::invalid_argument("step: seed vertex is not an inner vertex");
  std::vector<int> a(t.assign().begin(), t.assign().end());
  if (!kernel::step_in_place(t.region(), a, seed, variant)) return t;
  return Tiling::trusted(t.region_ptr(), std::move(a));
}

std::pair<Tiling, Tiling> coupled_step(const std::pair<Tiling, Tiling>& pair, const StepSeed& seed,
                                       const ChainVariant& variant) {
  if (pair.first.region_ptr() != pair.second.region_ptr())
    throw std::invalid_argument("coupled_step: tilings belong to different regions");
  return {step(pair.first, seed, variant), step(pair.second, seed, variant)};
}

Tiling run(const Tiling& t, const ChainVariant& variant, std::uint64_t steps, std::uint64_t rng_seed) {
  const Region& r = t.region();
  const CounterRng rng(rng_seed);
  std::vector<int> a(t.assign().begin(), t.assign().end());
  for (std::uint64_t i = 0; i < steps; ++i) kernel::step_in_place(r, a, seed_at(r, rng, i), variant);
  return Tiling::trusted(t.region_ptr(), std::move(a));
}

}  // namespace kagome
