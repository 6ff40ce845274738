#pragma once

#include "fse/grid.hpp"

namespace fse {

/// Forward 2D DFT, X[k,l] = sum_{m,n} x[m,n] exp(-j2pi(km/M + ln/N)). No scaling.
/// Throws InputError on non-finite samples.
Spectrum dft2(const SpatialGrid& grid);

/// Same as dft2, but throws ConfigError when the grid does not have the expected dimensions.
Spectrum dft2(const SpatialGrid& grid, Dims expected);

/// Inverse 2D DFT with positive exponent and 1/(MN) scaling.
SpatialGrid idft2(const Spectrum& spectrum);

/// Basis function phi_(u,v)[m,n] = exp(j2pi(um/M + vn/N)) sampled on a grid.
SpatialGrid basis_function(Dims dims, Frequency f);

}  // namespace fse
