#include <doctest.h>

#include <thread>
#include <vector>

#include "fse/error.hpp"
#include "fse/spectral.hpp"
#include "support.hpp"

using namespace fse;
using namespace fse::testing;

TEST_CASE("dft2 of a constant grid is a DC spike") {
  const Dims d{8, 12};
  SpatialGrid ones(d);
  for (auto& z : ones.samples()) z = 1.0;
  const Spectrum X = dft2(ones);
  CHECK(std::abs(X(0, 0) - Complex(96.0, 0.0)) < 1e-12);
  for (std::size_t i = 1; i < X.size(); ++i) CHECK(std::abs(X[i]) < 1e-12);
}

TEST_CASE("dft2 of a basis function is a spike at its frequency") {
  const Dims d{16, 16};
  for (Frequency f : {Frequency{3, 5}, Frequency{0, 9}, Frequency{15, 1}}) {
    const Spectrum X = dft2(basis_function(d, f));
    const double mn = static_cast<double>(d.size());
    for (int k = 0; k < d.rows; ++k) {
      for (int l = 0; l < d.cols; ++l) {
        const Complex expected = (k == f.u && l == f.v) ? Complex(mn, 0.0) : Complex(0.0, 0.0);
        CHECK(std::abs(X(k, l) - expected) <= 1e-10 * mn);
      }
    }
  }
}

TEST_CASE("dft2 and idft2 match the direct double sums") {
  Rng rng(11);
  for (Dims d : {Dims{8, 8}, Dims{6, 10}, Dims{5, 7}}) {
    const auto x = random_array<SpatialGrid>(d, rng);
    const auto forward = naive_dft<Spectrum>(x, -1);
    CHECK(max_abs_diff(dft2(x), forward) <= 1e-10 * max_abs(forward));

    const auto X = random_array<Spectrum>(d, rng);
    auto inverse = naive_dft<SpatialGrid>(X, +1);
    for (auto& z : inverse.samples()) z /= static_cast<double>(d.size());
    CHECK(max_abs_diff(idft2(X), inverse) <= 1e-10 * max_abs(inverse));
  }
}

TEST_CASE("idft2 of a DC spike is the all-ones grid") {
  Spectrum X(Dims{8, 8});
  X(0, 0) = 64.0;
  const SpatialGrid x = idft2(X);
  for (const auto& z : x.samples()) CHECK(std::abs(z - Complex(1.0, 0.0)) < 1e-14);
}

TEST_CASE("round trip, Parseval and shift-product identity") {
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const Dims d = trial % 2 == 0 ? Dims{16, 16} : Dims{8, 8};
    const auto x = random_array<SpatialGrid>(d, rng);
    const Spectrum X = dft2(x);

    CHECK(max_abs_diff(idft2(X), x) <= 1e-10 * max_abs(x));

    double spatial = 0.0;
    double spectral = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      spatial += std::norm(x[i]);
      spectral += std::norm(X[i]);
    }
    CHECK(std::abs(spatial - spectral / static_cast<double>(d.size())) <= 1e-9 * spatial);

    const Frequency shift{rng.between(0, d.rows - 1), rng.between(0, d.cols - 1)};
    const SpatialGrid phi = basis_function(d, shift);
    SpatialGrid product(d);
    for (std::size_t i = 0; i < x.size(); ++i) product[i] = phi[i] * x[i];
    const Spectrum P = dft2(product);
    double err = 0.0;
    for (int k = 0; k < d.rows; ++k) {
      for (int l = 0; l < d.cols; ++l) {
        const Complex expected = X((k - shift.u + d.rows) % d.rows, (l - shift.v + d.cols) % d.cols);
        err = std::max(err, std::abs(P(k, l) - expected));
      }
    }
    CHECK(err <= 1e-10 * max_abs(X));
  }
}

TEST_CASE("dft2 rejects mismatched dimensions and non-finite input") {
  SpatialGrid x(Dims{8, 8});
  CHECK_THROWS_AS(dft2(x, Dims{64, 64}), ConfigError);
  x(2, 3) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(dft2(x), InputError);
  Spectrum X(Dims{4, 4});
  X(0, 0) = Complex(0.0, INFINITY);
  CHECK_THROWS_AS(idft2(X), InputError);
}

TEST_CASE("concurrent transforms agree with sequential ones") {
  Rng rng(5);
  std::vector<SpatialGrid> inputs;
  for (int i = 0; i < 8; ++i) inputs.push_back(random_array<SpatialGrid>(i % 2 ? Dims{64, 64} : Dims{24, 40}, rng));
  std::vector<Spectrum> expected;
  for (const auto& x : inputs) expected.push_back(dft2(x));

  std::vector<Spectrum> got(inputs.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      pool.emplace_back([&, i] {
        for (int rep = 0; rep < 20; ++rep) got[i] = dft2(inputs[i]);
      });
    }
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) CHECK(max_abs_diff(got[i], expected[i]) == 0.0);
}
