#include <cmath>
#include <cstddef>
#include <vector>

#include "fse/extrapolation.hpp"
#include "fse/kernels.hpp"
#include "setup.hpp"

namespace fse {
namespace {

// Row-major indices i with i <= index(mirror(i)): one representative per
// conjugate pair plus every self-conjugate bin.
std::vector<std::size_t> canonical_half(Dims d) {
  std::vector<std::size_t> out;
  out.reserve(d.size() / 2 + 4);
  for (int k = 0; k < d.rows; ++k) {
    for (int l = 0; l < d.cols; ++l) {
      const Frequency m = mirror({k, l}, d);
      const std::size_t i = static_cast<std::size_t>(k) * d.cols + l;
      const std::size_t j = static_cast<std::size_t>(m.u) * d.cols + m.v;
      if (i <= j) out.push_back(i);
    }
  }
  return out;
}

std::size_t select_pair(const Spectrum& rw, const std::vector<std::size_t>& candidates) {
  std::size_t best = candidates.front();
  double best_val = std::norm(rw[best]);
  double threshold = best_val * (1.0 + kTieTolerance);
  for (std::size_t i : candidates) {
    const double val = std::norm(rw[i]);
    if (val > threshold) {
      best = i;
      best_val = val;
      threshold = val * (1.0 + kTieTolerance);
    }
  }
  return best;
}

}  // namespace

ExtrapolationResult extrapolate_rfse(const SpatialGrid& signal, const AreaMask& mask, const FseConfig& config) {
  config.validate();
  return extrapolate_rfse(signal, mask, build_weight(mask, config.rho_hat), config);
}

ExtrapolationResult extrapolate_rfse(const SpatialGrid& signal, const AreaMask& mask, const WeightMatrix& weight,
                                     const FseConfig& config) {
  detail::Prepared prep = detail::prepare(signal, mask, weight, config);
  Spectrum& rw = prep.weighted_residual;
  const Spectrum& w = prep.weight_spectrum;
  const Dims dims = config.fft;
  const double inv_w00 = prep.inv_w00;
  const double gamma = config.gamma;
  const double mn = static_cast<double>(dims.size());
  const double energy_factor = gamma * (2.0 - gamma) * inv_w00;
  const std::vector<std::size_t> candidates = canonical_half(dims);

  // Either a fixed iteration count or a basis-function budget.
  const bool by_budget = config.basis_functions.has_value();
  const int limit = by_budget ? *config.basis_functions : config.iterations;

  ExtrapolationResult result;
  result.initial_energy = prep.energy;
  Spectrum g(dims);
  double energy = prep.energy;
  int tally = 0;

  for (int it = 1; by_budget ? tally < limit : it <= limit; ++it) {
    const std::size_t idx = select_pair(rw, candidates);
    const Frequency f{static_cast<int>(idx / dims.cols), static_cast<int>(idx % dims.cols)};
    const Frequency fm = mirror(f, dims);
    const Complex r = rw[idx];
    if (config.early_exit && std::norm(r) < 1e-20) break;

    if (f == fm) {
      // Real-valued atom (zero or highest alternating frequency): real coefficient.
      const double c = gamma * r.real() * inv_w00;
      g[idx] += mn * c;
      update_residual(rw, w, f, c);
      energy -= energy_factor * r.real() * r.real();
      tally += 1;
      result.trace.push_back({it, f, Complex(c, 0.0), energy, true});
    } else {
      const Complex c = gamma * inv_w00 * r;
      g[idx] += mn * c;
      g(fm.u, fm.v) += mn * std::conj(c);
      update_residual(rw, w, f, c);
      update_residual(rw, w, fm, std::conj(c));
      // The two atoms are not orthogonal under w; their overlap is W[-2u,-2v].
      const Frequency twice = mirror({(2 * f.u) % dims.rows, (2 * f.v) % dims.cols}, dims);
      energy -= 2.0 * energy_factor * std::norm(r) - 2.0 * (c * c * w(twice.u, twice.v)).real();
      tally += 2;
      result.trace.push_back({it, f, c, energy, false});
    }
  }
  result.selected_basis_functions = tally;

  detail::finish(signal, mask, g, result);
  return result;
}

}  // namespace fse
