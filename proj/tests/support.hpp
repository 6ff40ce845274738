#pragma once

// Test-only helpers: seeded generators and a direct double-sum DFT that is
// independent of the FFT backend.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "fse/grid.hpp"

namespace fse::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
  }
  int between(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::mt19937_64 engine_;
};

template <typename Array>
Array random_array(Dims d, Rng& rng, bool real_only = false) {
  Array a(d);
  for (std::size_t i = 0; i < d.size(); ++i) {
    a[i] = Complex(rng.uniform(-1.0, 1.0), real_only ? 0.0 : rng.uniform(-1.0, 1.0));
  }
  return a;
}

/// X[k,l] = sum x[m,n] exp(sign * j2pi(km/M + ln/N)), by direct summation in long double.
template <typename Out, typename In>
Out naive_dft(const In& x, int sign) {
  const int M = x.rows();
  const int N = x.cols();
  Out out(x.dims());
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (int k = 0; k < M; ++k) {
    for (int l = 0; l < N; ++l) {
      long double re = 0.0L;
      long double im = 0.0L;
      for (int m = 0; m < M; ++m) {
        for (int n = 0; n < N; ++n) {
          const long double phase =
              sign * two_pi * (static_cast<long double>((k * m) % M) / M + static_cast<long double>((l * n) % N) / N);
          const long double c = std::cos(phase);
          const long double s = std::sin(phase);
          const long double xr = x(m, n).real();
          const long double xi = x(m, n).imag();
          re += xr * c - xi * s;
          im += xr * s + xi * c;
        }
      }
      out(k, l) = Complex(static_cast<double>(re), static_cast<double>(im));
    }
  }
  return out;
}

template <typename A, typename B>
double max_abs_diff(const A& a, const B& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

template <typename A>
double max_abs(const A& a) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i]));
  return d;
}

/// max |X[k,l] - conj(X[-k,-l])| relative to max |X|.
template <typename A>
double hermitian_error(const A& x) {
  const Dims d = x.dims();
  double err = 0.0;
  for (int k = 0; k < d.rows; ++k) {
    for (int l = 0; l < d.cols; ++l) {
      const Frequency m = mirror({k, l}, d);
      err = std::max(err, std::abs(x(k, l) - std::conj(x(m.u, m.v))));
    }
  }
  const double scale = max_abs(x);
  return scale > 0.0 ? err / scale : err;
}

}  // namespace fse::testing
