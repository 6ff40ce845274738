#include "fse/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fse/error.hpp"
#include "fse/spectral.hpp"

namespace fse {

std::size_t AreaMask::count(Area a) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), a));
}

AreaMask build_mask(Dims fft_dims, const Rect& loss, int support_width, const std::optional<Rect>& valid) {
  if (fft_dims.rows < 1 || fft_dims.cols < 1) throw ConfigError("build_mask: FFT dimensions must be positive");
  if (support_width < 0) throw ConfigError("build_mask: support width must be nonnegative");
  if (loss.height < 1 || loss.width < 1) throw ConfigError("build_mask: loss rectangle is empty");
  if (loss.top < 0 || loss.left < 0 || loss.bottom() > fft_dims.rows || loss.right() > fft_dims.cols) {
    throw ConfigError("build_mask: loss rectangle " + std::to_string(loss.height) + "x" +
                      std::to_string(loss.width) + " at (" + std::to_string(loss.top) + "," +
                      std::to_string(loss.left) + ") does not fit in the " + std::to_string(fft_dims.rows) +
                      "x" + std::to_string(fft_dims.cols) + " window");
  }

  AreaMask mask(fft_dims);
  const Rect ring{loss.top - support_width, loss.left - support_width, loss.height + 2 * support_width,
                  loss.width + 2 * support_width};
  const int r0 = std::max(ring.top, 0);
  const int r1 = std::min(ring.bottom(), fft_dims.rows);
  const int c0 = std::max(ring.left, 0);
  const int c1 = std::min(ring.right(), fft_dims.cols);
  for (int r = r0; r < r1; ++r) {
    for (int c = c0; c < c1; ++c) {
      if (loss.contains(r, c)) {
        mask.set(r, c, Area::Loss);
      } else if (!valid || valid->contains(r, c)) {
        mask.set(r, c, Area::Support);
      }
    }
  }
  if (mask.count(Area::Support) == 0) throw ConfigError("build_mask: geometry leaves no support samples");
  return mask;
}

WeightMatrix build_weight(const AreaMask& mask, double rho_hat) {
  if (!(rho_hat > 0.0 && rho_hat < 1.0)) {
    throw ConfigError("rho_hat must lie in (0, 1), got " + std::to_string(rho_hat));
  }
  const Dims d = mask.dims();
  WeightMatrix w(d);
  const double cm = (d.rows - 1) / 2.0;
  const double cn = (d.cols - 1) / 2.0;
  for (int m = 0; m < d.rows; ++m) {
    for (int n = 0; n < d.cols; ++n) {
      if (mask(m, n) != Area::Support) continue;
      const double dist = std::hypot(m - cm, n - cn);
      w[static_cast<std::size_t>(m) * d.cols + n] = std::pow(rho_hat, dist);
    }
  }
  return w;
}

Spectrum weight_spectrum(const WeightMatrix& w) {
  const auto& v = w.values();
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
    throw EmptySupportError("weight_spectrum: all weights are zero");
  }
  SpatialGrid grid(w.dims());
  for (std::size_t i = 0; i < v.size(); ++i) grid[i] = v[i];
  return dft2(grid);
}

}  // namespace fse
