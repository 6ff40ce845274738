#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fse/grid.hpp"
#include "fse/weighting.hpp"

namespace fse {

enum class Algorithm { cfse, rfse };

std::string_view to_string(Algorithm a);
/// Accepts "cfse" and "rfse". Throws ConfigError otherwise.
Algorithm parse_algorithm(std::string_view name);

struct FseConfig {
  double rho_hat = 0.8;
  double gamma = 0.2;
  /// Iteration count I.
  int iterations = 100;
  Dims fft{64, 64};
  Algorithm algorithm = Algorithm::cfse;
  /// If set, replaces `iterations`: iterate until the selected-basis-function
  /// tally reaches this value. Zero is allowed and yields the transform-only path.
  std::optional<int> basis_functions;
  /// Stop once max |R_w|^2 falls below 1e-20. Off by default.
  bool early_exit = false;

  /// Throws ConfigError on out-of-range parameters.
  void validate() const;
};

struct IterationRecord {
  int iteration = 0;  // 1-based
  Frequency selected;
  Complex coefficient;
  /// sum w |r|^2 after this iteration's update.
  double residual_energy = 0.0;
  /// rFSE only: the selected bin is its own conjugate partner.
  bool self_conjugate = false;
};

struct ExtrapolationResult {
  /// Input with Loss samples replaced by Re{g}; everything else copied verbatim.
  SpatialGrid reconstructed;
  /// Final model g = idft2(G).
  SpatialGrid model;
  std::vector<IterationRecord> trace;
  /// Cumulative basis functions including repeats (pairs count twice).
  int selected_basis_functions = 0;
  /// sum w |s|^2 before the first iteration.
  double initial_energy = 0.0;
};

/// Complex-valued FSE: one basis function per iteration, no divisions in the loop.
ExtrapolationResult extrapolate_cfse(const SpatialGrid& signal, const AreaMask& mask, const FseConfig& config);

/// Real-valued FSE: one conjugate pair per iteration, so the model stays real.
ExtrapolationResult extrapolate_rfse(const SpatialGrid& signal, const AreaMask& mask, const FseConfig& config);

/// Variants with a caller-supplied weighting function instead of the
/// exponential decay built from config.rho_hat. The weights must be finite,
/// nonnegative and zero outside Support; rho_hat is ignored.
ExtrapolationResult extrapolate_cfse(const SpatialGrid& signal, const AreaMask& mask, const WeightMatrix& weight,
                                     const FseConfig& config);
ExtrapolationResult extrapolate_rfse(const SpatialGrid& signal, const AreaMask& mask, const WeightMatrix& weight,
                                     const FseConfig& config);

/// Dispatches on config.algorithm.
ExtrapolationResult extrapolate(const SpatialGrid& signal, const AreaMask& mask, const FseConfig& config);

}  // namespace fse
