#pragma once

#include <string>
#include <vector>

namespace mv {

// Structured outcome of an identity/property check: which statement was
// tested, on what inputs, how many witnesses were examined, and every
// violating instance (empty iff pass).
struct VerificationReport {
  std::string theorem;
  std::string inputs;
  long witnesses_checked = 0;
  std::vector<std::string> violations;
  bool pass = true;

  void note_witness() { ++witnesses_checked; }
  void violate(std::string what) {
    violations.push_back(std::move(what));
    pass = false;
  }
};

}  // namespace mv
