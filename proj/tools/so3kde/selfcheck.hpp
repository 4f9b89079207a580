#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace so3kde::app {

struct CheckResult {
  std::string name;
  double error = 0;
  double tolerance = 0;
  bool passed = false;
  double seconds = 0;
};

struct SelfCheckOptions {
  std::uint64_t seed = 1;
  // Test hook: adds 1e-3 to one coefficient inside the named check.
  std::string perturb;
};

/// Names of the checks, in run order.
std::vector<std::string> selfcheck_names();

/// Cross-module invariants: orthogonality, unitarity, addition theorem,
/// semigroup, admissibility, wavelet norm, Parseval, metric axioms, grid
/// exactness, estimator path equivalences and the L = 49 coefficient count.
std::vector<CheckResult> run_selfcheck(const SelfCheckOptions& options = {});

void print_check_table(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace so3kde::app
