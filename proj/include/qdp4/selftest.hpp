#pragma once

// Exhaustive invariant suites run by `qdp4 selftest`.

#include <cstdint>
#include <string>
#include <vector>

namespace qdp4 {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string detail;  // first failure, if any
  double seconds = 0;
};

const std::vector<std::string>& selftest_suites();
// Throws InvalidInput for an unknown suite name.
SuiteResult run_suite(const std::string& name);
// All suites when names is empty.
std::vector<SuiteResult> run_selftest(const std::vector<std::string>& names = {});

}  // namespace qdp4
