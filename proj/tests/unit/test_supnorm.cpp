#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qasl/error.hpp"
#include "qasl/harness.hpp"
#include "qasl/kernels.hpp"
#include "qasl/supnorm.hpp"

using namespace qasl;

namespace {

const AnnulusParams R2(2.0);

// Brute-force maximum over an M^n grid on one torus.
double dense_max(const LaurentPoly& g, const std::vector<double>& radii, int M) {
  const int n = g.n_vars();
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  double best = 0.0;
  while (true) {
    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      z[static_cast<std::size_t>(i)] =
          std::polar(radii[static_cast<std::size_t>(i)], 2.0 * std::numbers::pi * idx[static_cast<std::size_t>(i)] / M);
    }
    best = std::max(best, std::abs(eval_point(g, z)));
    int k = n - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == M) idx[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return best;
}

}  // namespace

TEST_CASE("sup_norm examples") {
  LaurentPoly g(1);
  g.add({1}, 1.0);
  g.add({-1}, 1.0);
  const auto s = sup_norm(g, BoundarySpec::for_poly(g, BoundaryKind::polyannulus_distinguished, 2.0));
  CHECK(s.value == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(s.value <= 2.5 + 1e-12);
  CHECK(s.upper() >= 2.5);
  CHECK(std::abs(std::remainder(s.arg_angles[0], 2.0 * std::numbers::pi)) <= 1e-6);

  for (int m = 1; m <= 6; ++m) {
    LaurentPoly gm(1);
    gm.add({m}, std::pow(2.0, -m));
    gm.add({-m}, std::pow(2.0, -m));
    const auto sm = sup_norm(gm, BoundarySpec::for_poly(gm, BoundaryKind::polyannulus_distinguished, 2.0));
    const double want = 1.0 + std::pow(2.0, -2 * m);
    CHECK(sm.value == doctest::Approx(want).epsilon(1e-12));
    CHECK(sm.value <= want + 1e-12);
  }

  const auto c = sup_norm(LaurentPoly::constant(2, Complex(3, 4)),
                          BoundarySpec{BoundaryKind::polyannulus_distinguished, 2.0, 256});
  CHECK(c.value == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(c.certified_error == 0.0);

  const auto z = sup_norm(LaurentPoly(1), BoundarySpec{BoundaryKind::polycircle_r, 2.0, 256});
  CHECK(z.value == 0.0);
}

TEST_CASE("sup_norm validates its inputs") {
  LaurentPoly g(1);
  g.add({10}, 1.0);
  CHECK(BoundarySpec::sample_floor(g) == 320);
  CHECK_THROWS_AS((void)sup_norm(g, BoundarySpec{BoundaryKind::polycircle_r, 2.0, 256}), InputError);
  CHECK_THROWS_AS((void)sup_norm(g, BoundarySpec{BoundaryKind::polycircle_r, 1.0, 320}), InputError);
  CHECK_THROWS_AS((void)sup_on_torus(g, {2.0}, 4), InputError);
  CHECK_THROWS_AS((void)sup_on_torus(g, {2.0, 2.0}, 64), InputError);
  CHECK_THROWS_AS((void)sup_on_torus(g, {-1.0}, 64), InputError);
}

TEST_CASE("certified interval contains a ten-times denser grid maximum") {
  Philox rng(11);
  for (int n = 1; n <= 2; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto g = random_laurent(n, 3 + trial % 3, R2, rng);
      for (const std::vector<double>& radii :
           {std::vector<double>(static_cast<std::size_t>(n), 2.0), std::vector<double>(static_cast<std::size_t>(n), 0.5)}) {
        const int N = 32;
        const auto s = sup_on_torus(g, radii, N);
        const double dense = dense_max(g, radii, 10 * N);
        CHECK(s.value <= dense + s.certified_error / 10.0 + 1e-12);
        CHECK(dense <= s.upper() + 1e-12);
      }
    }
  }
}

TEST_CASE("value never drops as the grid is refined by an integer factor") {
  // Refining by a factor keeps every old grid point, and the polish starts
  // from a grid maximum, so the estimate is non-decreasing up to polish noise.
  Philox rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_laurent(1, 8, R2, rng);
    double prev = 0.0;
    double prev_err = 1e300;
    for (int N : {256, 512, 1024}) {
      const auto s = sup_norm(g, BoundarySpec{BoundaryKind::polyannulus_distinguished, 2.0, N});
      CHECK(s.value >= prev - 1e-12 * s.value);
      CHECK(s.certified_error <= prev_err);
      prev = s.value;
      prev_err = s.certified_error;
    }
  }
}

TEST_CASE("distinguished boundary takes the largest torus") {
  LaurentPoly g(2);
  g.add({1, -1}, 1.0);  // |z/w| peaks at |z| = r, |w| = 1/r
  const auto s = sup_norm(g, BoundarySpec::for_poly(g, BoundaryKind::polyannulus_distinguished, 2.0));
  CHECK(s.value == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(s.arg_radii == std::vector<double>{2.0, 0.5});
  const auto p = sup_norm(g, BoundarySpec::for_poly(g, BoundaryKind::polycircle_r, 2.0));
  CHECK(p.value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("maximum-modulus property against interior points") {
  Philox rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_laurent(2, 4, R2, rng);
    const auto s = sup_norm(g, BoundarySpec::for_poly(g, BoundaryKind::polyannulus_distinguished, 2.0));
    for (int k = 0; k < 100; ++k) {
      std::vector<Complex> z{std::polar(std::pow(2.0, rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 7.0)),
                             std::polar(std::pow(2.0, rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 7.0))};
      CHECK(std::abs(eval_point(g, z)) <= s.upper() + 1e-12);
    }
  }
}

TEST_CASE("results agree across kernel backends") {
  Philox rng(14);
  const auto g = random_laurent(2, 5, R2, rng);
  const auto spec = BoundarySpec::for_poly(g, BoundaryKind::polyannulus_distinguished, 2.0);
  const auto saved = kernels::active_backend();
  kernels::set_active_backend(kernels::Backend::scalar);
  const auto ref = sup_norm(g, spec);
  for (auto b : {kernels::Backend::scalar, kernels::Backend::avx2, kernels::Backend::neon}) {
    if (!kernels::backend_available(b)) continue;
    kernels::set_active_backend(b);
    const auto s = sup_norm(g, spec);
    CHECK(s.value == doctest::Approx(ref.value).epsilon(1e-12));
    CHECK(s.certified_error == ref.certified_error);
  }
  kernels::set_active_backend(saved);
}

TEST_CASE("decomposition estimates on examples") {
  LaurentPoly g(2);
  g.add({1, 1}, 1.0);
  const auto rep = verify_decomposition_estimates(g, R2, EstimateKind::pair_parts);
  REQUIRE(rep.estimates.size() == 4);
  CHECK(rep.estimates[0].ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.estimates[1].ratio == 0.0);
  CHECK(rep.all_pass);

  LaurentPoly h(2);
  h.add({1, -1}, 1.0);
  h.add({-1, 1}, 1.0);
  const auto sign = verify_decomposition_estimates(h, R2, EstimateKind::sign_parts);
  CHECK(sign.all_pass);
  CHECK(sign.estimates[0].bound == doctest::Approx(16.0 / 9.0));
  CHECK(sign.estimates[1].bound == doctest::Approx(28.0 / 9.0));

  CHECK_THROWS_AS((void)verify_decomposition_estimates(LaurentPoly::monomial({1}), R2, EstimateKind::pair_parts),
                  InputError);
}

TEST_CASE("decomposition estimates hold for random polynomials") {
  Philox rng(15);
  for (double r : {1.5, 2.0, 3.0}) {
    const AnnulusParams p(r);
    for (int trial = 0; trial < 8; ++trial) {
      const auto g = random_laurent(2, 4, p, rng);
      CHECK(verify_decomposition_estimates(g, p, EstimateKind::pair_parts).all_pass);
      CHECK(verify_decomposition_estimates(g, p, EstimateKind::sign_parts).all_pass);
    }
  }
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_laurent(1, 6, R2, rng);
    CHECK(verify_decomposition_estimates(g, R2, EstimateKind::sign_parts).all_pass);
  }
}
