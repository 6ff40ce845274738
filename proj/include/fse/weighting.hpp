#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fse/grid.hpp"

namespace fse {

enum class Area : std::uint8_t { Support, Loss, Padding };

/// Axis-aligned rectangle in grid or image coordinates.
struct Rect {
  int top = 0;
  int left = 0;
  int height = 0;
  int width = 0;

  int bottom() const { return top + height; }  // exclusive
  int right() const { return left + width; }   // exclusive
  bool contains(int r, int c) const { return r >= top && r < bottom() && c >= left && c < right(); }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Per-sample classification of the extrapolation window.
class AreaMask {
 public:
  AreaMask() = default;
  /// Every sample starts as Padding.
  explicit AreaMask(Dims dims) : dims_(dims), labels_(dims.size(), Area::Padding) {}

  Dims dims() const { return dims_; }
  Area operator()(int r, int c) const { return labels_[index(r, c)]; }
  void set(int r, int c, Area a) { labels_[index(r, c)] = a; }
  Area operator[](std::size_t i) const { return labels_[i]; }

  std::size_t count(Area a) const;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(dims_.cols) + static_cast<std::size_t>(c);
  }

  Dims dims_;
  std::vector<Area> labels_;
};

/// Central-loss geometry: `loss` becomes Loss, the ring of `support_width`
/// samples around it becomes Support, everything else is Padding.
///
/// The ring is clipped to the grid and, when `valid` is given, to that region
/// (the part of the window that lies inside the source image). Clipped samples
/// stay Padding. Throws ConfigError if the loss rectangle leaves the grid or no
/// Support sample remains.
AreaMask build_mask(Dims fft_dims, const Rect& loss, int support_width,
                    const std::optional<Rect>& valid = std::nullopt);

/// Real, nonnegative weights w[m,n].
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(Dims dims) : dims_(dims), w_(dims.size(), 0.0) {}

  Dims dims() const { return dims_; }
  double operator()(int r, int c) const { return w_[static_cast<std::size_t>(r) * dims_.cols + c]; }
  double operator[](std::size_t i) const { return w_[i]; }
  double& operator[](std::size_t i) { return w_[i]; }
  const std::vector<double>& values() const { return w_; }

 private:
  Dims dims_;
  std::vector<double> w_;
};

/// Isotropic exponential decay rho^d on Support, with d the Euclidean distance
/// to the grid center ((M-1)/2, (N-1)/2); zero on Loss and Padding.
/// Throws ConfigError unless 0 < rho_hat < 1.
WeightMatrix build_weight(const AreaMask& mask, double rho_hat);

/// W = dft2(w). Throws EmptySupportError when every weight is zero.
Spectrum weight_spectrum(const WeightMatrix& w);

}  // namespace fse
