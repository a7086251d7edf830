#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conint {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// The analytic invariant suite: norm preservation, variational bound,
/// anticommutation, UCCSD particle-number conservation, SPSA and COBYLA
/// analytic problems, 1/sqrt(shots) scaling and scan determinism.
/// A check that throws is reported as failed with the exception text.
std::vector<CheckResult> run_selftest();

/// Runs the suite, prints one line per check, returns true if all passed.
bool print_selftest(std::ostream& out);

}  // namespace conint
