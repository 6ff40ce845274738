#include <cmath>
#include <string>

#include "fse/error.hpp"
#include "fse/extrapolation.hpp"
#include "fse/kernels.hpp"
#include "fse/spectral.hpp"
#include "setup.hpp"

namespace fse {

std::string_view to_string(Algorithm a) { return a == Algorithm::cfse ? "cfse" : "rfse"; }

Algorithm parse_algorithm(std::string_view name) {
  if (name == "cfse") return Algorithm::cfse;
  if (name == "rfse") return Algorithm::rfse;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected cfse or rfse)");
}

void FseConfig::validate() const {
  if (!(rho_hat > 0.0 && rho_hat < 1.0)) {
    throw ConfigError("rho_hat must lie in (0, 1), got " + std::to_string(rho_hat));
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw ConfigError("gamma must lie in (0, 1], got " + std::to_string(gamma));
  }
  if (basis_functions) {
    if (*basis_functions < 0) throw ConfigError("basis-function budget must be nonnegative");
  } else if (iterations < 1) {
    throw ConfigError("iteration count must be at least 1, got " + std::to_string(iterations));
  }
  if (fft.rows < 2 || fft.cols < 2) {
    throw ConfigError("FFT dimensions must be at least 2x2, got " + std::to_string(fft.rows) + "x" +
                      std::to_string(fft.cols));
  }
}

namespace detail {

Prepared prepare(const SpatialGrid& signal, const AreaMask& mask, WeightMatrix weight, const FseConfig& config) {
  config.validate();
  if (signal.dims() != config.fft || mask.dims() != config.fft || weight.dims() != config.fft) {
    throw ConfigError("signal/mask/weight dimensions do not match the configured FFT size " +
                      std::to_string(config.fft.rows) + "x" + std::to_string(config.fft.cols));
  }
  for (std::size_t i = 0; i < weight.values().size(); ++i) {
    const double v = weight[i];
    if (!std::isfinite(v) || v < 0.0 || (v != 0.0 && mask[i] != Area::Support)) {
      throw ConfigError("weights must be finite, nonnegative and zero outside the support");
    }
  }
  if (!signal.all_finite()) throw InputError("signal contains non-finite samples");
  for (std::size_t i = 0; i < signal.size(); ++i) {
    if (mask[i] == Area::Support && signal[i].imag() != 0.0) {
      throw InputError("signal must be real-valued on support samples");
    }
  }

  Prepared p;
  p.weight = std::move(weight);
  p.weight_spectrum = weight_spectrum(p.weight);
  p.w00 = p.weight_spectrum[0].real();
  const double mn = static_cast<double>(signal.size());
  if (!(p.w00 >= 1e-12 * mn)) {
    throw EmptySupportError("W[0,0] = " + std::to_string(p.w00) + " is below 1e-12*MN, support is empty");
  }
  p.inv_w00 = 1.0 / p.w00;

  SpatialGrid weighted(signal.dims());
  for (std::size_t i = 0; i < signal.size(); ++i) {
    weighted[i] = signal[i] * p.weight[i];
    p.energy += p.weight[i] * std::norm(signal[i]);
  }
  p.weighted_residual = dft2(weighted, config.fft);
  return p;
}

void finish(const SpatialGrid& signal, const AreaMask& mask, const Spectrum& model_spectrum,
            ExtrapolationResult& result) {
  result.model = idft2(model_spectrum);
  result.reconstructed = signal;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    if (mask[i] == Area::Loss) result.reconstructed[i] = result.model[i].real();
  }
}

}  // namespace detail

ExtrapolationResult extrapolate_cfse(const SpatialGrid& signal, const AreaMask& mask, const FseConfig& config) {
  config.validate();
  return extrapolate_cfse(signal, mask, build_weight(mask, config.rho_hat), config);
}

ExtrapolationResult extrapolate_cfse(const SpatialGrid& signal, const AreaMask& mask, const WeightMatrix& weight,
                                     const FseConfig& config) {
  detail::Prepared prep = detail::prepare(signal, mask, weight, config);
  Spectrum& rw = prep.weighted_residual;
  const Spectrum& w = prep.weight_spectrum;
  const double inv_w00 = prep.inv_w00;
  const double gamma = config.gamma;
  const double energy_factor = gamma * (2.0 - gamma) * inv_w00;
  const int iterations = config.basis_functions.value_or(config.iterations);

  ExtrapolationResult result;
  result.initial_energy = prep.energy;
  result.trace.reserve(static_cast<std::size_t>(iterations));
  Spectrum g(config.fft);
  double energy = prep.energy;

  for (int it = 1; it <= iterations; ++it) {
    const Frequency f = select_basis(rw);
    const double peak = std::norm(rw(f.u, f.v));
    if (config.early_exit && peak < 1e-20) break;
    const Complex c = estimate_coefficient(rw, f, gamma, inv_w00);
    update_model(g, f, c);
    update_residual(rw, w, f, c);
    energy -= energy_factor * peak;
    result.trace.push_back({it, f, c, energy, false});
  }
  result.selected_basis_functions = static_cast<int>(result.trace.size());

  detail::finish(signal, mask, g, result);
  return result;
}

ExtrapolationResult extrapolate(const SpatialGrid& signal, const AreaMask& mask, const FseConfig& config) {
  return config.algorithm == Algorithm::cfse ? extrapolate_cfse(signal, mask, config)
                                             : extrapolate_rfse(signal, mask, config);
}

}  // namespace fse
