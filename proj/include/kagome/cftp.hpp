#pragma once

// Monotone coupling from the past and forward sandwich coupling times.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kagome/chain.hpp"

namespace kagome {

class OrderViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultStepBudget = 1000000000ull;

/// Bottom and top states for one chain variant: the height extremes of all
/// tilings, or of the restrained component for the restrained chain.
struct Sandwich {
  RegionPtr region;
  ChainVariant variant;
  Tiling bottom;
  Tiling top;
};

// Throws std::invalid_argument for weighted chains with lambda > 1, whose
// grand coupling is not monotone.
Sandwich make_sandwich(const RegionPtr& region, const ChainVariant& variant);

struct CftpOptions {
  std::uint64_t budget = kDefaultStepBudget;  // chain steps summed over both copies' epochs
  // Check h(bottom) <= h(top) at the flipped vertex after every step.
  bool monitor_order = true;
  // Sees every (counter, seed) pair consumed, in order of use.
  std::function<void(std::uint64_t, const StepSeed&)> on_seed;
};

struct CftpResult {
  Tiling sample;
  std::uint64_t window = 0;       // T of the coalescing epoch
  std::uint64_t total_steps = 0;  // steps over all epochs
  int epochs = 0;
};

/// Runs the sandwich from times -1, -2, -4, ... to 0. Time -t uses counter
/// t - 1 of the rng_seed stream in every epoch. Throws OrderViolation when
/// monitoring catches the copies crossing and BudgetExceeded past the budget.
CftpResult cftp_sample(const Sandwich& s, std::uint64_t rng_seed, const CftpOptions& opt = {});
CftpResult cftp_sample(const RegionPtr& region, const ChainVariant& variant, std::uint64_t rng_seed,
                       const CftpOptions& opt = {});

/// Steps until the sandwich started at time 0 coalesces (counters 0, 1, ...).
std::uint64_t forward_coupling_time(const Sandwich& s, std::uint64_t rng_seed, const CftpOptions& opt = {});
std::uint64_t forward_coupling_time(const RegionPtr& region, const ChainVariant& variant, std::uint64_t rng_seed,
                                    const CftpOptions& opt = {});

struct BenchRow {
  int n = 0;
  int tiles = 0;
  int inner_vertices = 0;
  int trial = 0;
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  bool over_budget = false;
};

struct BenchSize {
  int n = 0;
  int tiles = 0;
  double mean = 0;
  double stderr_mean = 0;
  int trials = 0;
  bool flagged = false;  // some trial ran out of budget; excluded from the fit
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchSize> sizes;
  bool fitted = false;
  double exponent = 0;   // slope of log(mean) against log(tiles)
  double prefactor = 0;  // mean ~ prefactor * tiles^exponent
};

struct BenchOptions {
  std::string family = "square";
  std::uint64_t budget = kDefaultStepBudget;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Forward coupling times for every size and trial. Trial seeds derive from
/// (seed, n, trial), so results do not depend on the thread count. Throws
/// std::invalid_argument when trials < 30.
BenchReport benchmark_scaling(const std::vector<int>& sizes, int trials, const ChainVariant& variant,
                              std::uint64_t seed, const BenchOptions& opt = {});

std::uint64_t trial_seed(std::uint64_t seed, int n, int trial);

// Header n,N_tiles,N_inner_vertices,trial,steps,seed.
std::string bench_csv(const BenchReport& report);

}  // namespace kagome
