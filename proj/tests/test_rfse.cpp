#include <doctest.h>

#include <numbers>

#include "fse/extrapolation.hpp"
#include "fse/oracle.hpp"
#include "fse/spectral.hpp"
#include "support.hpp"

using namespace fse;
using namespace fse::testing;

namespace {

struct Problem {
  SpatialGrid signal;
  AreaMask mask;
  FseConfig config;
};

Problem random_block(Dims d, const Rect& loss, int support, std::uint64_t seed) {
  Rng rng(seed);
  Problem p{SpatialGrid(d), build_mask(d, loss, support), FseConfig{}};
  p.config.fft = d;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (p.mask[i] == Area::Support) p.signal[i] = rng.uniform(0.0, 255.0);
  }
  return p;
}

}  // namespace

TEST_CASE("constant signal: one real DC selection, same result as cFSE") {
  const Dims d{16, 16};
  Problem p{SpatialGrid(d), build_mask(d, Rect{5, 5, 6, 6}, 5), FseConfig{}};
  p.config.fft = d;
  p.config.iterations = 1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (p.mask[i] == Area::Support) p.signal[i] = 42.0;
  }
  const auto r = extrapolate_rfse(p.signal, p.mask, p.config);
  const auto c = extrapolate_cfse(p.signal, p.mask, p.config);
  REQUIRE(r.trace.size() == 1);
  CHECK(r.trace[0].selected == Frequency{0, 0});
  CHECK(r.trace[0].self_conjugate);
  CHECK(r.trace[0].coefficient.imag() == 0.0);
  CHECK(r.trace[0].coefficient.real() == doctest::Approx(0.2 * 42.0).epsilon(1e-12));
  CHECK(r.selected_basis_functions == 1);
  CHECK(max_abs_diff(r.reconstructed, c.reconstructed) < 1e-12);
}

TEST_CASE("real cosine with unit weights is recovered by one pair") {
  const Dims d{16, 12};
  const Frequency f{3, 5};
  SpatialGrid signal(d);
  for (int m = 0; m < d.rows; ++m) {
    for (int n = 0; n < d.cols; ++n) {
      signal(m, n) = 7.0 * std::cos(2.0 * std::numbers::pi * (3.0 * m / d.rows + 5.0 * n / d.cols) + 0.4);
    }
  }
  AreaMask mask(d);
  WeightMatrix w(d);
  for (int m = 0; m < d.rows; ++m) {
    for (int n = 0; n < d.cols; ++n) mask.set(m, n, Area::Support);
  }
  for (std::size_t i = 0; i < d.size(); ++i) w[i] = 1.0;
  FseConfig cfg;
  cfg.fft = d;
  cfg.gamma = 1.0;
  cfg.iterations = 1;
  const auto res = extrapolate_rfse(signal, mask, w, cfg);
  REQUIRE(res.trace.size() == 1);
  CHECK(res.trace[0].selected == f);
  CHECK_FALSE(res.trace[0].self_conjugate);
  CHECK(res.selected_basis_functions == 2);
  CHECK(max_abs_diff(res.model, signal) <= 1e-9);
  CHECK(res.trace[0].residual_energy <= 1e-12 * res.initial_energy);
}

TEST_CASE("rFSE agrees with the pairwise spatial oracle") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Problem p = random_block({16, 16}, Rect{4, 5, 7, 6}, 4, seed);
    p.config.iterations = 40;
    const auto fast = extrapolate_rfse(p.signal, p.mask, p.config);
    const auto ref = oracle_extrapolate(p.signal, p.mask, p.config, true);
    REQUIRE(fast.trace.size() == ref.trace.size());
    for (std::size_t i = 0; i < fast.trace.size(); ++i) {
      CHECK(fast.trace[i].selected == ref.trace[i].selected);
      CHECK(fast.trace[i].self_conjugate == ref.trace[i].self_conjugate);
      CHECK(std::abs(fast.trace[i].coefficient - ref.trace[i].coefficient) <=
            1e-9 * std::abs(ref.trace[i].coefficient));
    }
    CHECK(fast.selected_basis_functions == ref.selected_basis_functions);
    CHECK(max_abs_diff(fast.reconstructed, ref.reconstructed) <= 1e-8);
  }
}

TEST_CASE("model and residual stay Hermitian at every iteration") {
  Problem p = random_block({12, 14}, Rect{3, 4, 5, 5}, 3, 77);
  const WeightMatrix w = build_weight(p.mask, p.config.rho_hat);
  // Each prefix run reproduces the state after that many iterations.
  for (int it = 1; it <= 25; ++it) {
    p.config.iterations = it;
    const auto res = extrapolate_rfse(p.signal, p.mask, p.config);
    const Spectrum G = dft2(res.model);
    CHECK(hermitian_error(G) <= 1e-9);

    SpatialGrid rw(p.config.fft);
    for (std::size_t i = 0; i < rw.size(); ++i) rw[i] = (p.signal[i] - res.model[i]) * w[i];
    CHECK(hermitian_error(dft2(rw)) <= 1e-9);

    double max_re = 0.0;
    double max_im = 0.0;
    for (const auto& z : res.model.samples()) {
      max_re = std::max(max_re, std::abs(z.real()));
      max_im = std::max(max_im, std::abs(z.imag()));
    }
    CHECK(max_im <= 1e-8 * max_re);
  }
}

TEST_CASE("basis-function tally counts pairs twice") {
  Problem p = random_block({16, 16}, Rect{4, 4, 8, 8}, 4, 5);
  p.config.iterations = 30;
  const auto res = extrapolate_rfse(p.signal, p.mask, p.config);
  int expected = 0;
  for (const auto& rec : res.trace) {
    const Frequency m = mirror(rec.selected, p.config.fft);
    CHECK(rec.self_conjugate == (m == rec.selected));
    expected += rec.self_conjugate ? 1 : 2;
  }
  CHECK(res.selected_basis_functions == expected);

  for (int budget : {0, 1, 7, 40}) {
    p.config.basis_functions = budget;
    const auto b = extrapolate_rfse(p.signal, p.mask, p.config);
    CHECK(b.selected_basis_functions >= budget);
    CHECK(b.selected_basis_functions <= budget + 1);
    if (!b.trace.empty()) {
      const int before_last = b.selected_basis_functions - (b.trace.back().self_conjugate ? 1 : 2);
      CHECK(before_last < budget);
    }
  }
}

TEST_CASE("tracked pair energy matches the directly computed energy") {
  Problem p = random_block({16, 16}, Rect{5, 5, 6, 6}, 5, 12);
  p.config.iterations = 20;
  const WeightMatrix w = build_weight(p.mask, p.config.rho_hat);
  const auto full = extrapolate_rfse(p.signal, p.mask, p.config);
  for (int it = 1; it <= 20; ++it) {
    p.config.iterations = it;
    const auto res = extrapolate_rfse(p.signal, p.mask, p.config);
    double direct = 0.0;
    for (std::size_t i = 0; i < res.model.size(); ++i) direct += w[i] * std::norm(p.signal[i] - res.model[i]);
    CHECK(std::abs(full.trace[it - 1].residual_energy - direct) <= 1e-9 * full.initial_energy);
  }
}
