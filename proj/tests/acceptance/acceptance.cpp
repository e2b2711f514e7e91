// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exits nonzero if any required (non-exploratory) criterion fails.

#include <cstdio>
#include <iostream>

#include "cubesec/verification.hpp"

int main() {
  namespace v = cubesec::verification;
  int failed = 0;
  for (const auto& id : v::criterion_ids()) {
    const v::CriterionResult r = v::run_criterion(id);
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.number << ". " << r.id
              << (r.exploratory ? " (exploratory)" : "") << ": " << r.detail << " ["
              << r.seconds << " s]" << std::endl;
    if (!r.passed && !r.exploratory) ++failed;
  }
  std::cout << failed << " required criteria failed" << std::endl;
  return failed == 0 ? 0 : 1;
}
