#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fse/extrapolation.hpp"

namespace fse {

/// Small seeded extrapolation problem for equivalence checks.
struct RandomInstance {
  SpatialGrid signal;
  AreaMask mask;
  FseConfig config;
};

/// Grid sides in [8, max_side], real samples in [0, 255), Loss fraction at
/// most `max_loss` (either one rectangle or scattered samples, chosen by the
/// seed), gamma 0.2, rho 0.8 and an iteration count in [1, max_iterations].
RandomInstance random_instance(std::uint64_t seed, int max_side = 16, double max_loss = 0.3,
                               int max_iterations = 64);

struct CheckOutcome {
  std::string name;
  bool passed = false;
  /// Worst observed deviation, for the report line.
  double worst = 0.0;
  std::string detail;
};

/// Runs the oracle-equivalence and energy-identity checks for both algorithms
/// on `instances` seeded random problems.
std::vector<CheckOutcome> run_selfcheck(std::uint64_t seed, int instances);

}  // namespace fse
