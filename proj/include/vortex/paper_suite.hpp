#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace vortex {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
};

/// Largest distance between the two multisets under a greedy
/// nearest-neighbour matching; infinity if the sizes differ.
double multiset_distance(std::span<const std::complex<double>> got,
                         std::span<const std::complex<double>> expected);

/// Acceptance criteria 1-11 (spectra, Gamma = 0 fixtures, multipliers,
/// minors, verdict regions, reduction consistency, conservation,
/// submersion, derivative checks). Deterministic.
std::vector<CriterionResult> run_paper_suite();
CriterionResult run_criterion(int id);

}  // namespace vortex
