#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/report.hpp"

namespace mv::verify {

// Caller overrides for a suite run; absent fields fall back to the suite's
// pinned defaults (the defaults reproduce the acceptance table exactly).
struct SuiteOptions {
  std::optional<std::uint64_t> seed;
  std::optional<long long> samples;
  std::optional<double> tol;
  int threads = 1;
};

struct SuiteInfo {
  std::string id;
  std::string summary;
  double budget_seconds = 0.0;  // stated runtime budget; 0 = none declared
};

const std::vector<SuiteInfo>& suites();
bool is_suite(const std::string& id);

// Runs one verification suite. Unknown ids raise parse_error before any
// computation happens. The returned report records the parameters actually
// used in `inputs` and one violation string per failing instance.
VerificationReport run_suite(const std::string& id, const SuiteOptions& opt = {});

}  // namespace mv::verify
