#include "fse/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

#include "fse/error.hpp"

namespace fse {
namespace {

static_assert(sizeof(Complex) == sizeof(fftw_complex), "std::complex<double> must alias fftw_complex");

// FFTW planning is not thread-safe, execution with the new-array interface is.
// Plans are created once per (rows, cols, direction) under a lock and then
// executed on caller-owned buffers.
class PlanCache {
 public:
  fftw_plan get(Dims dims, int sign) {
    const auto key = std::make_tuple(dims.rows, dims.cols, sign);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    auto* in = fftw_alloc_complex(dims.size());
    auto* out = fftw_alloc_complex(dims.size());
    fftw_plan plan =
        fftw_plan_dft_2d(dims.rows, dims.cols, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) {
      throw ConfigError("FFTW could not plan a " + std::to_string(dims.rows) + "x" +
                        std::to_string(dims.cols) + " transform");
    }
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void check_dims(Dims d) {
  if (d.rows < 1 || d.cols < 1) {
    throw ConfigError("transform dimensions must be positive, got " + std::to_string(d.rows) + "x" +
                      std::to_string(d.cols));
  }
}

template <typename In, typename Out>
void execute(const In& in, Out& out, int sign) {
  fftw_plan plan = plan_cache().get(in.dims(), sign);
  // Out-of-place complex transforms leave the input untouched.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, src, dst);
}

}  // namespace

Spectrum dft2(const SpatialGrid& grid) {
  check_dims(grid.dims());
  if (!grid.all_finite()) throw InputError("dft2: grid contains non-finite samples");
  Spectrum out(grid.dims());
  execute(grid, out, FFTW_FORWARD);
  return out;
}

Spectrum dft2(const SpatialGrid& grid, Dims expected) {
  if (grid.dims() != expected) {
    throw ConfigError("dft2: grid is " + std::to_string(grid.rows()) + "x" + std::to_string(grid.cols()) +
                      " but the configured transform size is " + std::to_string(expected.rows) + "x" +
                      std::to_string(expected.cols));
  }
  return dft2(grid);
}

SpatialGrid idft2(const Spectrum& spectrum) {
  check_dims(spectrum.dims());
  if (!spectrum.all_finite()) throw InputError("idft2: spectrum contains non-finite coefficients");
  SpatialGrid out(spectrum.dims());
  execute(spectrum, out, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(spectrum.size());
  for (Complex& z : out.samples()) z *= scale;
  return out;
}

SpatialGrid basis_function(Dims dims, Frequency f) {
  check_dims(dims);
  SpatialGrid phi(dims);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int m = 0; m < dims.rows; ++m) {
    for (int n = 0; n < dims.cols; ++n) {
      // Reduce the integer phase first so large indices keep full precision.
      const long pm = (static_cast<long>(f.u) * m) % dims.rows;
      const long pn = (static_cast<long>(f.v) * n) % dims.cols;
      const double phase = two_pi * (static_cast<double>(pm) / dims.rows + static_cast<double>(pn) / dims.cols);
      phi(m, n) = std::polar(1.0, phase);
    }
  }
  return phi;
}

}  // namespace fse
