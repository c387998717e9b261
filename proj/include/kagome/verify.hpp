#pragma once

// Randomized property campaigns over small regions.

#include <cstdint>
#include <string>
#include <vector>

namespace kagome {

struct PropertyReport {
  std::string name;
  std::uint64_t operations = 0;
  std::uint64_t violations = 0;
  std::string first_violation;  // empty when none
  std::string note;
  bool pass() const { return violations == 0 && operations > 0; }
};

struct VerifyOptions {
  std::uint64_t operations = 1000000;  // minimum per property
  std::uint64_t seed = 1;
  // Region specs the campaigns cycle through; empty means a built-in mix.
  std::vector<std::string> regions;
};

// Properties, in report order.
PropertyReport verify_flip_involution(const VerifyOptions& opt);
PropertyReport verify_height_cycles(const VerifyOptions& opt);
PropertyReport verify_boundary_invariance(const VerifyOptions& opt);
PropertyReport verify_fish_delta_unit(const VerifyOptions& opt);
PropertyReport verify_order_preservation(const VerifyOptions& opt);
PropertyReport verify_cftp_seed_reuse(const VerifyOptions& opt);

std::vector<PropertyReport> verify_all(const VerifyOptions& opt);

}  // namespace kagome
