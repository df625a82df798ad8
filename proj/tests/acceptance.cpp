// Runs acceptance criteria 1-11 and prints one PASS/FAIL line per criterion.
#include <iostream>

#include "vortex/paper_suite.hpp"

int main() {
  int failed = 0;
  for (int id = 1; id <= 11; ++id) {
    const vortex::CriterionResult r = vortex::run_criterion(id);
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.title << "): " << r.detail
              << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all 11 criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
