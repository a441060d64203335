#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace helmscat {

struct SelftestCheck {
  std::string suite;
  std::string name;
  bool passed = false;
  double value = 0.0;  // measured quantity
  double bound = 0.0;  // pass if value <= bound
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;
  double seconds = 0.0;
  bool passed() const;
};

/// Invariant suites over specfun, densela, mfs, scatmat and multibody.
SelftestReport run_selftest(std::uint64_t seed = 2024);

}  // namespace helmscat
