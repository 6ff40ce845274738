#include "fse/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fse/error.hpp"

namespace fse {
namespace {

// Same value as kTieTolerance in kernels.hpp; kept separate on purpose.
constexpr double kTieRelTol = 1e-9;

std::vector<Complex> conj_roots(int n) {
  std::vector<Complex> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[i] = std::polar(1.0, -2.0 * std::numbers::pi * i / n);
  return t;
}

}  // namespace

ExtrapolationResult oracle_extrapolate(const SpatialGrid& signal, const AreaMask& mask, const FseConfig& config,
                                       bool pair_mode) {
  config.validate();
  const int M = config.fft.rows;
  const int N = config.fft.cols;
  if (M > kOracleMaxSide || N > kOracleMaxSide) {
    throw ConfigError("oracle: grid sides are limited to " + std::to_string(kOracleMaxSide));
  }
  const int limit = config.basis_functions.value_or(config.iterations);
  if (limit > kOracleMaxIterations) {
    throw ConfigError("oracle: at most " + std::to_string(kOracleMaxIterations) + " iterations");
  }
  if (signal.dims() != config.fft || mask.dims() != config.fft) {
    throw ConfigError("oracle: signal/mask dimensions do not match the configuration");
  }
  if (!signal.all_finite()) throw InputError("oracle: signal contains non-finite samples");

  // Weighting function evaluated directly.
  std::vector<double> w(signal.size(), 0.0);
  double w_sum = 0.0;
  for (int m = 0; m < M; ++m) {
    for (int n = 0; n < N; ++n) {
      if (mask(m, n) != Area::Support) continue;
      const double dm = m - (M - 1) / 2.0;
      const double dn = n - (N - 1) / 2.0;
      const double v = std::pow(config.rho_hat, std::sqrt(dm * dm + dn * dn));
      w[static_cast<std::size_t>(m) * N + n] = v;
      w_sum += v;
    }
  }
  if (!(w_sum >= 1e-12 * M * N)) throw EmptySupportError("oracle: support is empty");

  const std::vector<Complex> em = conj_roots(M);
  const std::vector<Complex> en = conj_roots(N);
  // conj(phi_(k,l))[m,n]
  auto atom_conj = [&](int k, int l, int m, int n) { return em[(k * m) % M] * en[(l * n) % N]; };

  std::vector<Complex> r(signal.samples().begin(), signal.samples().end());
  std::vector<Complex> g(signal.size());
  std::vector<Complex> p(signal.size());

  auto energy_of = [&] {
    double e = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) e += w[i] * std::norm(r[i]);
    return e;
  };

  ExtrapolationResult result;
  result.initial_energy = energy_of();
  int tally = 0;
  const bool by_budget = config.basis_functions.has_value();

  for (int it = 1; by_budget ? tally < limit : it <= limit; ++it) {
    // Weighted projection onto every atom. The denominator sum(conj(phi) w phi)
    // equals sum(w) because |phi| = 1.
    for (int k = 0; k < M; ++k) {
      for (int l = 0; l < N; ++l) {
        Complex acc = 0.0;
        for (int m = 0; m < M; ++m) {
          for (int n = 0; n < N; ++n) {
            const std::size_t i = static_cast<std::size_t>(m) * N + n;
            acc += r[i] * atom_conj(k, l, m, n) * w[i];
          }
        }
        p[static_cast<std::size_t>(k) * N + l] = acc / w_sum;
      }
    }

    // Selection: maximize |p|^2 * sum(w), row-major first among near-ties.
    int bu = -1;
    int bv = -1;
    double best = 0.0;
    for (int k = 0; k < M; ++k) {
      for (int l = 0; l < N; ++l) {
        const int mk = (M - k) % M;
        const int ml = (N - l) % N;
        if (pair_mode && k * N + l > mk * N + ml) continue;
        const double crit = std::norm(p[static_cast<std::size_t>(k) * N + l]) * w_sum;
        if (bu < 0 || crit > best * (1.0 + kTieRelTol)) {
          bu = k;
          bv = l;
          best = crit;
        }
      }
    }
    const Complex proj = p[static_cast<std::size_t>(bu) * N + bv];
    if (config.early_exit && best * w_sum < 1e-20) break;

    const bool self_conj = pair_mode && (2 * bu) % M == 0 && (2 * bv) % N == 0;
    const Complex c = self_conj ? Complex(config.gamma * proj.real(), 0.0) : config.gamma * proj;
    for (int m = 0; m < M; ++m) {
      for (int n = 0; n < N; ++n) {
        const std::size_t i = static_cast<std::size_t>(m) * N + n;
        const Complex phi = std::conj(atom_conj(bu, bv, m, n));
        Complex delta = c * phi;
        if (pair_mode && !self_conj) delta += std::conj(c) * std::conj(phi);
        g[i] += delta;
        r[i] -= delta;
      }
    }
    tally += (pair_mode && !self_conj) ? 2 : 1;
    result.trace.push_back({it, {bu, bv}, c, energy_of(), self_conj});
  }
  result.selected_basis_functions = tally;

  result.model = SpatialGrid(config.fft, g);
  result.reconstructed = signal;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    if (mask[i] == Area::Loss) result.reconstructed[i] = g[i].real();
  }
  return result;
}

}  // namespace fse
