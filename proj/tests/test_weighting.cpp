#include <doctest.h>

#include <cmath>

#include "fse/error.hpp"
#include "fse/weighting.hpp"
#include "support.hpp"

using namespace fse;
using namespace fse::testing;

namespace {

AreaMask full_support(Dims d) {
  AreaMask mask(d);
  for (int r = 0; r < d.rows; ++r) {
    for (int c = 0; c < d.cols; ++c) mask.set(r, c, Area::Support);
  }
  return mask;
}

}  // namespace

TEST_CASE("default geometry: 16x16 loss, 16 wide ring, 64x64 window") {
  const AreaMask mask = build_mask({64, 64}, Rect{24, 24, 16, 16}, 16);
  CHECK(mask.count(Area::Loss) == 256);
  CHECK(mask.count(Area::Support) == 2048);
  CHECK(mask.count(Area::Padding) == 1792);
  CHECK(mask(24, 24) == Area::Loss);
  CHECK(mask(8, 8) == Area::Support);
  CHECK(mask(7, 8) == Area::Padding);
  CHECK(mask(55, 55) == Area::Support);
  CHECK(mask(56, 55) == Area::Padding);
}

TEST_CASE("a loss covering the whole window has no support") {
  CHECK_THROWS_AS(build_mask({4, 4}, Rect{0, 0, 4, 4}, 2), ConfigError);
}

TEST_CASE("ring is clipped at the window border") {
  const AreaMask mask = build_mask({8, 8}, Rect{0, 0, 2, 2}, 2);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      Area expected = Area::Padding;
      if (r < 2 && c < 2) {
        expected = Area::Loss;
      } else if (r < 4 && c < 4) {
        expected = Area::Support;
      }
      CHECK(mask(r, c) == expected);
    }
  }
  CHECK(mask.count(Area::Support) == 12);
}

TEST_CASE("ring samples outside the valid region become padding") {
  // Window whose top 8 rows lie above the image.
  const AreaMask mask = build_mask({64, 64}, Rect{24, 24, 16, 16}, 16, Rect{8 + 8, 0, 1000, 1000});
  CHECK(mask(8, 30) == Area::Padding);
  CHECK(mask(16, 30) == Area::Support);
  CHECK(mask.count(Area::Support) == 2048 - 8 * 48);
}

TEST_CASE("loss rectangle outside the window is a configuration error") {
  CHECK_THROWS_AS(build_mask({16, 16}, Rect{10, 10, 8, 8}, 2), ConfigError);
  CHECK_THROWS_AS(build_mask({16, 16}, Rect{-1, 0, 4, 4}, 2), ConfigError);
}

TEST_CASE("weights follow the isotropic exponential decay") {
  const AreaMask mask5 = full_support({5, 5});
  for (double rho : {0.3, 0.8, 0.95}) CHECK(build_weight(mask5, rho)(2, 2) == doctest::Approx(1.0));
  CHECK(build_weight(mask5, 0.8)(2, 4) == doctest::Approx(0.64).epsilon(1e-14));

  const WeightMatrix w64 = build_weight(full_support({64, 64}), 0.8);
  const long double dist = std::sqrt(2.0L * 31.5L * 31.5L);
  const long double expected = std::pow(0.8L, dist);
  CHECK(std::abs(w64(0, 0) - static_cast<double>(expected)) <= 1e-12 * static_cast<double>(expected));
  CHECK(w64(0, 0) == doctest::Approx(4.838e-5).epsilon(1e-3));
}

TEST_CASE("loss and padding samples get zero weight") {
  const AreaMask mask = build_mask({64, 64}, Rect{24, 24, 16, 16}, 16);
  const WeightMatrix w = build_weight(mask, 0.8);
  for (int r = 0; r < 64; ++r) {
    for (int c = 0; c < 64; ++c) {
      if (mask(r, c) == Area::Support) {
        CHECK(w(r, c) > 0.0);
        CHECK(w(r, c) <= 1.0);
      } else {
        CHECK(w(r, c) == 0.0);
      }
    }
  }
}

TEST_CASE("rho outside (0,1) is rejected") {
  const AreaMask mask = full_support({4, 4});
  for (double rho : {0.0, 1.0, -0.5, 1.5, std::nan("")}) CHECK_THROWS_AS(build_weight(mask, rho), ConfigError);
}

TEST_CASE("weights decrease with distance from the centre") {
  const WeightMatrix w = build_weight(full_support({17, 23}), 0.8);
  const double cm = 8.0;
  const double cn = 11.0;
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const int r1 = rng.between(0, 16), c1 = rng.between(0, 22);
    const int r2 = rng.between(0, 16), c2 = rng.between(0, 22);
    const double d1 = std::hypot(r1 - cm, c1 - cn);
    const double d2 = std::hypot(r2 - cm, c2 - cn);
    if (d1 < d2) CHECK(w(r1, c1) > w(r2, c2));
    if (d1 == d2) CHECK(w(r1, c1) == w(r2, c2));
  }
}

TEST_CASE("weight spectrum") {
  SUBCASE("unit weights give a DC spike") {
    WeightMatrix w(Dims{8, 8});
    for (std::size_t i = 0; i < 64; ++i) w[i] = 1.0;
    const Spectrum W = weight_spectrum(w);
    CHECK(std::abs(W(0, 0) - Complex(64.0, 0.0)) < 1e-12);
    for (std::size_t i = 1; i < 64; ++i) CHECK(std::abs(W[i]) < 1e-12);
  }
  SUBCASE("a single weight gives a flat magnitude spectrum") {
    WeightMatrix w(Dims{8, 6});
    w[2 * 6 + 3] = 0.37;
    const Spectrum W = weight_spectrum(w);
    for (std::size_t i = 0; i < W.size(); ++i) CHECK(std::abs(W[i]) == doctest::Approx(0.37).epsilon(1e-12));
  }
  SUBCASE("default geometry: W[0,0] is the weight sum, W is Hermitian") {
    const WeightMatrix w = build_weight(build_mask({64, 64}, Rect{24, 24, 16, 16}, 16), 0.8);
    const Spectrum W = weight_spectrum(w);
    long double sum = 0.0L;
    for (double v : w.values()) sum += v;
    CHECK(std::abs(W(0, 0).real() - static_cast<double>(sum)) <= 1e-10 * static_cast<double>(sum));
    CHECK(std::abs(W(0, 0).imag()) <= 1e-12 * W(0, 0).real());
    CHECK(hermitian_error(W) <= 1e-10);
  }
  SUBCASE("all-zero weights are an empty support") {
    CHECK_THROWS_AS(weight_spectrum(WeightMatrix(Dims{4, 4})), EmptySupportError);
  }
}
