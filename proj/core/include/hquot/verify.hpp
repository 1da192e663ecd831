#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hquot {

enum class VerifyLevel { quick, full };

struct InvariantResult {
  std::string name;
  int cases = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_residual <= tolerance; }
};

struct SuiteReport {
  std::string name;
  std::vector<InvariantResult> invariants;
  double seconds = 0.0;

  int cases() const;
  bool passed() const;
};

// Runs every invariant suite for rank n. Deterministic given the seed:
// identical (n, seed, level) produce identical reports (timings aside).
std::vector<SuiteReport> run_verification(int n, std::uint64_t seed, VerifyLevel level);

bool all_passed(const std::vector<SuiteReport>& reports);

}  // namespace hquot
