#pragma once

#include <string>
#include <vector>

namespace mlgeo::accept {

struct CheckResult {
  std::string id;
  std::string tier;  // fast | standard | extended
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Run the reproduction suite for one tier ("fast", "standard", "extended")
// or "all". Each check re-derives a published desk-scale value.
std::vector<CheckResult> run(const std::string& tier);

}  // namespace mlgeo::accept
