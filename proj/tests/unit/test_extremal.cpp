#include <doctest.h>

#include <cmath>

#include "qasl/error.hpp"
#include "qasl/extremal.hpp"

using namespace qasl;

namespace {
const AnnulusParams R2(2.0);
}

TEST_CASE("cyclic shift model for p = 2") {
  const auto m = cyclic_shift_model(2, R2);
  CHECK(m.dim() == 4);
  CHECK(m.weights == std::vector<double>{2.0, 2.0, 0.5, 0.5});
  CHECK(xi_profile(m) == std::vector<double>{1.0, 2.0, 4.0, 2.0});
  CHECK(m.S(1, 0) == Complex(2.0));
  CHECK(m.S(0, 3) == Complex(0.5));
  CHECK((m.S * m.S_inv - ComplexMatrix::Identity(4, 4)).norm() == 0.0);
  CHECK_THROWS_AS((void)cyclic_shift_model(0, R2), InputError);
  CHECK_THROWS_AS((void)cyclic_shift_model(10, R2, 8), ResourceError);
}

TEST_CASE("shift models are QA_r members with ||S^m|| = r^m") {
  for (int p : {1, 2, 5, 9}) {
    const auto model = cyclic_shift_model(p, R2);
    const auto mem = membership(model.S, R2);
    CHECK(mem.in_qa);
    CHECK(mem.norm_T == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(mem.norm_Tinv == doctest::Approx(2.0).epsilon(1e-14));
    for (int m = 1; m <= p; ++m) {
      CHECK(op_norm(integer_power(model.S, model.S_inv, m)) == doctest::Approx(std::pow(2.0, m)).epsilon(1e-13));
    }
  }
}

TEST_CASE("test function g_m") {
  const auto g = test_function_gm(3, R2);
  CHECK(g.size() == 2);
  CHECK(g.coeff({3}) == Complex(0.125));
  CHECK(g.coeff({-3}) == Complex(0.125));
  CHECK(gm_supnorm(1, R2) == 1.25);
  CHECK(gm_supnorm(3, R2) == 1.0 + 1.0 / 64.0);
  CHECK((eval_point(g, {2.0}) - Complex(gm_supnorm(3, R2))) == Complex(0.0));
  CHECK_THROWS_AS((void)test_function_gm(0, R2), InputError);
}

TEST_CASE("ratio matches the reference on the diagonal p = m") {
  // Oracle: 2 r^m / (r^m + r^-m), equal to the ratio when p = m.
  for (int m = 2; m <= 6; ++m) {
    const auto t = lower_bound_scan(R2, {m}, {m}, 1);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].ratio == doctest::Approx(t.rows[0].reference).epsilon(1e-12));
  }
}

TEST_CASE("ratios for a long period against an independent dense computation") {
  // Values from an independent dense-matrix computation at p = 64, r = 2.
  const double want[] = {1.16619, 1.333622, 1.392626, 1.408722, 1.412835, 1.413868, 1.414127, 1.414192};
  const auto t = lower_bound_scan(R2, {64}, {1, 2, 3, 4, 5, 6, 7, 8}, 1);
  REQUIRE(t.rows.size() == 8);
  for (int m = 1; m <= 8; ++m) {
    CHECK(t.rows[static_cast<std::size_t>(m - 1)].ratio == doctest::Approx(want[m - 1]).epsilon(2e-6));
  }
}

TEST_CASE("scan rows stay between 1 and the upper bound") {
  const auto t = lower_bound_scan(R2, {4, 6, 8}, {1, 2, 3, 4}, 2);
  CHECK(t.rows.size() == 12);
  CHECK(t.all_within_upper);
  for (const auto& row : t.rows) {
    CHECK(row.ratio >= 1.0);
    CHECK(row.upper == dc_poly_bound(R2, 2));
    CHECK(row.reference == doctest::Approx(std::pow(2.0 * std::pow(2.0, row.m) / (std::pow(2.0, row.m) + std::pow(2.0, -row.m)), 2)));
  }
  CHECK(t.rows[0].p == 4);
  CHECK(t.rows[0].m == 1);
}

TEST_CASE("scan preconditions") {
  CHECK_THROWS_AS((void)lower_bound_scan(R2, {2}, {1, 2, 3}, 1), PreconditionError);
  CHECK_THROWS_AS((void)lower_bound_scan(R2, {}, {1}, 1), InputError);
  CHECK_THROWS_AS((void)lower_bound_scan(R2, {4}, {0, 1}, 1), InputError);
  CHECK_THROWS_AS((void)lower_bound_scan(R2, {4}, {1}, 0), InputError);
  const auto dup = lower_bound_scan(R2, {4, 4, 3}, {2, 1, 2}, 1);
  CHECK(dup.rows.size() == 4);
}

TEST_CASE("tensor norm is multiplicative") {
  for (int m = 1; m <= 4; ++m) {
    const auto t = tensor_norm_check(8, m, R2);
    CHECK(t.rel_error <= 1e-12);
    CHECK(t.norm > 0.0);
  }
  const auto scan = lower_bound_scan(R2, {16}, {2, 3}, 1);
  CHECK(scan.tensor.p == 8);
  CHECK(scan.tensor.m == 2);
  CHECK(scan.tensor.rel_error <= 1e-12);
}
