#pragma once

#include <string>
#include <vector>

namespace swlat {

/// Outcome of one release-gate check.
struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string details;  // summary statistics, or the first failure
  long long ms = 0;
};

/// Run the twelve release-gate checks: exact class counts and signs across
/// the model grid, the fibered counts against an independent divisor oracle,
/// randomized recovery round trips, multiplicity and plurigenera recovery,
/// the canonical-ray wall search, the crossing-sign fixture, wall-crossing
/// path independence, reflection equivariance, the desk-scale
/// distinguished-chamber search, summand rigidity, and the enumeration
/// kernel against a boxed brute-force oracle. Deterministic seeds; every
/// stated time budget is enforced. Exceptions are caught per criterion and
/// reported as failures.
std::vector<CriterionResult> run_all_criteria();

}  // namespace swlat
