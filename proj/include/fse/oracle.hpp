#pragma once

#include "fse/extrapolation.hpp"

namespace fse {

/// Largest grid side and iteration count the brute-force oracle accepts.
inline constexpr int kOracleMaxSide = 32;
inline constexpr int kOracleMaxIterations = 256;

/// Spatial-domain matching pursuit evaluated by direct summation.
///
/// Each iteration projects the residual onto every DFT atom with the weighted
/// inner product, picks the atom with the largest |p|^2 * sum(w), and updates
/// model and residual sample by sample. No transform is used anywhere, which
/// makes it the reference for `extrapolate_cfse` (pair_mode = false) and
/// `extrapolate_rfse` (pair_mode = true). Residual energies in the trace are
/// computed directly from r.
///
/// The argmax applies the row-major-first rule with relative tolerance 1e-9,
/// the same contract as the frequency-domain selection.
///
/// Throws ConfigError if a side exceeds kOracleMaxSide or the iteration count
/// (or basis-function budget) exceeds kOracleMaxIterations.
ExtrapolationResult oracle_extrapolate(const SpatialGrid& signal, const AreaMask& mask, const FseConfig& config,
                                       bool pair_mode);

}  // namespace fse
