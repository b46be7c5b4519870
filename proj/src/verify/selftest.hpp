#pragma once

#include <string>
#include <vector>

namespace mv::verify {

struct SelftestCase {
  std::string id;
  bool pass = false;
  std::string detail;  // empty on pass; failure reason otherwise
};

// Runs the registry of pinned closed-form examples, one case per id. Cases
// evaluate under whatever global tolerance is currently configured, so a
// corrupted tolerance override surfaces here as named failures.
std::vector<SelftestCase> run_selftest();

}  // namespace mv::verify
