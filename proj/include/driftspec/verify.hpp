#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace driftspec {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The per-module invariant suites. quick = reduced sample counts and grids.
std::vector<CheckResult> run_verification(bool quick, std::uint64_t seed = 42);

} // namespace driftspec
