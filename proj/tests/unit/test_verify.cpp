#include <doctest.h>

#include "kagome/verify.hpp"

using namespace kagome;

TEST_SUITE("verify") {

TEST_CASE("small campaigns") {
  VerifyOptions opt;
  opt.operations = 20000;
  opt.seed = 4;
  const auto reports = verify_all(opt);
  REQUIRE(reports.size() == 6);
  for (const auto& r : reports) {
    CAPTURE(r.name);
    CHECK(r.operations >= opt.operations);
    if (r.name == "fish_delta_unit") {
      // Flips that turn two fish tiles into two trapezes exist.
      CHECK(r.violations > 0);
      CHECK_FALSE(r.first_violation.empty());
    } else {
      CHECK(r.pass());
    }
  }
}

TEST_CASE("campaigns are reproducible") {
  VerifyOptions opt;
  opt.operations = 5000;
  opt.regions = {"lozenge:3"};
  const auto a = verify_fish_delta_unit(opt), b = verify_fish_delta_unit(opt);
  CHECK(a.violations == b.violations);
  CHECK(a.first_violation == b.first_violation);
}

}  // TEST_SUITE
