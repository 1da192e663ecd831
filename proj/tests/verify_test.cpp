#include "hquot/verify.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace hquot;

TEST_CASE("quick verification passes for the small ranks") {
  for (int n : {2, 3}) {
    const auto reports = run_verification(n, 0, VerifyLevel::quick);
    CHECK(all_passed(reports));
    CHECK(reports.size() == 10);
    for (const auto& suite : reports) {
      CHECK(suite.cases() > 0);
      for (const auto& inv : suite.invariants) {
        INFO(suite.name, "/", inv.name);
        CHECK(inv.max_residual <= inv.tolerance);
      }
    }
  }
}

TEST_CASE("verification is deterministic in the seed") {
  const auto a = run_verification(2, 42, VerifyLevel::quick);
  const auto b = run_verification(2, 42, VerifyLevel::quick);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].invariants.size() == b[i].invariants.size());
    for (std::size_t j = 0; j < a[i].invariants.size(); ++j) {
      CHECK(a[i].invariants[j].max_residual == b[i].invariants[j].max_residual);
      CHECK(a[i].invariants[j].cases == b[i].invariants[j].cases);
    }
  }
}

TEST_CASE("rank preconditions") {
  CHECK_THROWS_AS(run_verification(1, 0, VerifyLevel::quick), std::invalid_argument);
  CHECK_THROWS_AS(run_verification(9, 0, VerifyLevel::quick), std::invalid_argument);
}
