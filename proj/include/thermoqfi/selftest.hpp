#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tqfi {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Compact end-to-end run of the library invariants on seeded random models.
std::vector<CheckResult> run_selftest(unsigned long long seed = 20240611ULL);

void print_results(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace tqfi
