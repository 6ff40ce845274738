#pragma once

// Frequency-domain step kernels shared by the cFSE and rFSE loops. They are
// header-only so the iteration loops inline them.

#include <cstddef>
#include <span>

#include "fse/grid.hpp"

namespace fse {

/// Relative tie tolerance of the argmax. Scanning in row-major order, a bin
/// only displaces the current best if its squared modulus is larger by more
/// than this factor, so bins that are equal up to rounding resolve to the
/// smallest row-major index k*N + l. The spatial oracle applies the same rule.
inline constexpr double kTieTolerance = 1e-9;

/// argmax |R_w[k,l]|^2 with the row-major tie-break.
inline Frequency select_basis(const Spectrum& rw) {
  const auto* p = reinterpret_cast<const double*>(rw.data());
  const std::size_t n = rw.size();
  std::size_t best = 0;
  double best_val = p[0] * p[0] + p[1] * p[1];
  double threshold = best_val * (1.0 + kTieTolerance);
  for (std::size_t i = 1; i < n; ++i) {
    const double re = p[2 * i];
    const double im = p[2 * i + 1];
    const double val = re * re + im * im;
    if (val > threshold) {
      best = i;
      best_val = val;
      threshold = val * (1.0 + kTieTolerance);
    }
  }
  return {static_cast<int>(best / static_cast<std::size_t>(rw.cols())),
          static_cast<int>(best % static_cast<std::size_t>(rw.cols()))};
}

/// c = gamma * R_w[u,v] / W[0,0], with the reciprocal precomputed by the caller.
inline Complex estimate_coefficient(const Spectrum& rw, Frequency f, double gamma, double inv_w00) {
  return gamma * inv_w00 * rw(f.u, f.v);
}

/// G[u,v] += MN * c. Only the selected bin changes.
inline void update_model(Spectrum& g, Frequency f, Complex c) {
  g(f.u, f.v) += static_cast<double>(g.size()) * c;
}

/// R_w[k,l] -= c * W[(k-u) mod M, (l-v) mod N] for every bin.
///
/// Each row is split at column v so the inner loops carry no modulo and no
/// branch.
inline void update_residual(Spectrum& rw, const Spectrum& w, Frequency f, Complex c) {
  const int rows = rw.rows();
  const int cols = rw.cols();
  const double cr = c.real();
  const double ci = c.imag();
  auto* r = reinterpret_cast<double*>(rw.data());
  const auto* ws = reinterpret_cast<const double*>(w.data());
  for (int k = 0; k < rows; ++k) {
    const int wk = k >= f.u ? k - f.u : k - f.u + rows;
    double* rrow = r + 2 * static_cast<std::size_t>(k) * cols;
    const double* wrow = ws + 2 * static_cast<std::size_t>(wk) * cols;
    // l in [0, v): W column l - v + N
    const double* wtail = wrow + 2 * static_cast<std::size_t>(cols - f.v);
    for (int l = 0; l < f.v; ++l) {
      const double a = wtail[2 * l];
      const double b = wtail[2 * l + 1];
      rrow[2 * l] -= cr * a - ci * b;
      rrow[2 * l + 1] -= cr * b + ci * a;
    }
    // l in [v, N): W column l - v
    double* rhead = rrow + 2 * static_cast<std::size_t>(f.v);
    for (int l = 0; l < cols - f.v; ++l) {
      const double a = wrow[2 * l];
      const double b = wrow[2 * l + 1];
      rhead[2 * l] -= cr * a - ci * b;
      rhead[2 * l + 1] -= cr * b + ci * a;
    }
  }
}

}  // namespace fse
