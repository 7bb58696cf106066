#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exdep/grammar.hpp"
#include "exdep/measures.hpp"

namespace exdep {

struct CheckLine {
  std::string name;
  bool pass = false;
  double deviation = 0.0;  // measured discrepancy
  double tolerance = 0.0;  // bound it must stay under
  std::string detail;
};

// Identity suites behind `check ...`. Each returns one line per assertion;
// a suite passes when every line does.

// Sharp bounds 1 <= mu <= d, lambda <= 1, the min-moment order relation and
// the extremal-coefficient domination, over a fixed battery of model pairs.
std::vector<CheckLine> check_bounds(std::uint64_t n, const StreamKey& key);

// |mu + lambda - 2| <= 4 * combined SE for a bivariate pair.
std::vector<CheckLine> check_bivariate(const SpectralModel& h, const DistributionSpec& q,
                                       std::uint64_t n, const StreamKey& key);

// d = 3 inclusion-exclusion round trip: mu from the lambda table vs the
// direct estimate, and conversely.
std::vector<CheckLine> check_subsets(const SpectralModel& h, const DistributionSpec& q,
                                     std::uint64_t n, const StreamKey& key);

// Joint uniform-exceedance limits for the logistic and product laws.
std::vector<CheckLine> check_exceedance(std::uint64_t reps, const StreamKey& key);

// Asymptotic-independence battery: Gaussian-copula items fall below the
// frozen thresholds, and the logistic tail coefficient matches 2 - 2^(1/2).
std::vector<CheckLine> check_independence(std::uint64_t reps, const StreamKey& key);

inline bool all_pass(const std::vector<CheckLine>& lines) {
  for (const auto& l : lines)
    if (!l.pass) return false;
  return true;
}

}  // namespace exdep
