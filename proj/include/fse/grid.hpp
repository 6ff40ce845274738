#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fse {

using Complex = std::complex<double>;

/// Grid dimensions: `rows` is M (index m or k), `cols` is N (index n or l).
struct Dims {
  int rows = 0;
  int cols = 0;

  std::size_t size() const { return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols); }
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Dense row-major M x N array of complex samples. The tag keeps pixel-domain
/// grids and DFT spectra from being mixed up.
template <typename Tag>
class ComplexArray2D {
 public:
  ComplexArray2D() = default;
  explicit ComplexArray2D(Dims dims) : dims_(dims), data_(dims.size()) {}
  ComplexArray2D(Dims dims, std::vector<Complex> data) : dims_(dims), data_(std::move(data)) {}

  Dims dims() const { return dims_; }
  int rows() const { return dims_.rows; }
  int cols() const { return dims_.cols; }
  std::size_t size() const { return data_.size(); }

  Complex& operator()(int r, int c) { return data_[index(r, c)]; }
  const Complex& operator()(int r, int c) const { return data_[index(r, c)]; }
  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }

  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(dims_.cols) + static_cast<std::size_t>(c);
  }

  Complex* data() { return data_.data(); }
  const Complex* data() const { return data_.data(); }
  std::span<Complex> samples() { return data_; }
  std::span<const Complex> samples() const { return data_; }

  bool all_finite() const {
    for (const Complex& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
  }

 private:
  Dims dims_;
  std::vector<Complex> data_;
};

struct SpatialTag {};
struct FrequencyTag {};

/// Samples s[m,n] in the pixel domain.
using SpatialGrid = ComplexArray2D<SpatialTag>;
/// DFT coefficients X[k,l], unnormalized forward convention.
using Spectrum = ComplexArray2D<FrequencyTag>;

/// Frequency index pair (u, v) of a selected basis function.
struct Frequency {
  int u = 0;
  int v = 0;
  friend bool operator==(const Frequency&, const Frequency&) = default;
};

/// Index of the conjugate partner ((M-u) mod M, (N-v) mod N).
inline Frequency mirror(Frequency f, Dims d) {
  return {(d.rows - f.u) % d.rows, (d.cols - f.v) % d.cols};
}

}  // namespace fse
