#pragma once

// Shared pre- and post-processing of the two extrapolation loops.

#include "fse/extrapolation.hpp"
#include "fse/grid.hpp"
#include "fse/weighting.hpp"

namespace fse::detail {

struct Prepared {
  WeightMatrix weight;
  Spectrum weight_spectrum;    // W
  Spectrum weighted_residual;  // R_w, initially dft2(s * w)
  double w00 = 0.0;
  double inv_w00 = 0.0;
  double energy = 0.0;  // sum w |s|^2
};

/// Validates inputs and runs the two forward transforms.
Prepared prepare(const SpatialGrid& signal, const AreaMask& mask, WeightMatrix weight, const FseConfig& config);

/// Inverse transform of the model and Loss-only write-back.
void finish(const SpatialGrid& signal, const AreaMask& mask, const Spectrum& model_spectrum,
            ExtrapolationResult& result);

}  // namespace fse::detail
