#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "qasl/error.hpp"
#include "qasl/harness.hpp"
#include "qasl/qannulus.hpp"

using namespace qasl;

namespace {

const AnnulusParams R2(2.0);

ComplexMatrix diag2(Complex a, Complex b) {
  ComplexMatrix M = ComplexMatrix::Zero(2, 2);
  M(0, 0) = a;
  M(1, 1) = b;
  return M;
}

ComplexMatrix scalar(Complex a) { return ComplexMatrix::Constant(1, 1, a); }

}  // namespace

TEST_CASE("annulus constants") {
  CHECK(R2.c_r() == 4.25);
  CHECK(R2.a_r() == doctest::Approx(1.0 / std::sqrt(4.25)).epsilon(1e-15));
  CHECK(R2.rinv2() == 0.25);
  CHECK_THROWS_AS(AnnulusParams(1.0), InputError);
  CHECK_THROWS_AS(AnnulusParams(0.5), InputError);
  CHECK_THROWS_AS(AnnulusParams(std::nan("")), InputError);
}

TEST_CASE("beta_defect examples") {
  // 4.25 - 1 - 1
  CHECK(beta_defect(scalar(1.0), R2)(0, 0).real() == doctest::Approx(2.25));
  CHECK(op_norm(beta_defect(diag2(2.0, 0.5), R2)) <= 1e-15);
  // 4.25 - 9 - 1/9
  CHECK(beta_defect(scalar(3.0), R2)(0, 0).real() == doctest::Approx(4.25 - 9.0 - 1.0 / 9.0));
  CHECK(beta_defect(scalar(3.0), R2)(0, 0).real() == doctest::Approx(-4.86111).epsilon(1e-6));
  CHECK_THROWS_WITH_AS((void)beta_defect(diag2(1.0, 0.0), R2), doctest::Contains("not invertible"),
                       DomainError);
}

TEST_CASE("beta commutes with T*T") {
  Philox rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix T = gen_qa_operator(4, R2, rng);
    const ComplexMatrix G = T.adjoint() * T;
    const ComplexMatrix B = beta_defect(T, R2);
    CHECK(hermitian_defect(B) <= 1e-14);
    CHECK(op_norm(ComplexMatrix(B * G - G * B)) <= 1e-10 * R2.c_r());
  }
}

TEST_CASE("membership examples") {
  const auto u = membership(diag2(2.0, 0.5), R2);
  CHECK(u.in_qa);
  CHECK(u.is_qa_unitary);
  CHECK(u.routes_agree);

  const auto out = membership(scalar(3.0), R2);
  CHECK_FALSE(out.in_qa);
  CHECK_FALSE(out.in_qa_beta);
  CHECK(out.norm_T == doctest::Approx(3.0));

  const auto sing = membership(diag2(1.0, 0.0), R2);
  CHECK_FALSE(sing.in_qa);
  CHECK(sing.reason == "not invertible");
}

TEST_CASE("membership routes agree on members and non-members") {
  Philox rng(11);
  int members = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int dim = 1 + static_cast<int>(rng.below(5));
    ComplexMatrix T;
    if (trial % 2 == 0) {
      T = gen_qa_operator(dim, R2, rng);
    } else {
      T = test::gaussian_matrix(dim, dim, rng) * rng.uniform(0.3, 3.0);
    }
    const auto m = membership(T, R2);
    CHECK(m.routes_agree);
    if (m.in_qa) {
      ++members;
      CHECK(m.min_beta_eig >= -1e-10 * R2.c_r());
    }
  }
  CHECK(members >= 150);
}

TEST_CASE("dilate on T = [1]") {
  const auto d = dilate(scalar(1.0), R2);
  ComplexMatrix H(2, 2);
  H << 1.0, 1.5, 0.0, 1.0;
  CHECK((d.hat_T - H).norm() <= 1e-14);
  ComplexMatrix G(2, 2);
  G << 1.0, 1.5, 1.5, 3.25;
  CHECK(((d.hat_T.adjoint() * d.hat_T) - G).norm() <= 1e-14);
  CHECK(d.defect_norm <= 1e-14);
  CHECK(d.verified);
  // hat_T^2 = [[1, 3], [0, 1]]
  const ComplexMatrix H2 = d.hat_T * d.hat_T;
  CHECK(H2(0, 0) == Complex(1.0));
  CHECK(H2(0, 1).real() == doctest::Approx(3.0));
  CHECK(d.compression_errors.at(2) <= 1e-14);
}

TEST_CASE("dilate of a QA unitary has zero coupling") {
  const auto d = dilate(diag2(2.0, 0.5), R2);
  CHECK(d.hat_T.topRightCorner(2, 2).norm() <= 1e-7);
  CHECK((d.hat_T.bottomRightCorner(2, 2) - diag2(0.5, 2.0)).norm() <= 1e-14);
  CHECK(d.verified);
}

TEST_CASE("dilate rejects non-members") {
  CHECK_THROWS_AS((void)dilate(scalar(3.0), R2), PreconditionError);
}

TEST_CASE("dilation identities on random members") {
  Philox rng(5);
  for (double r : {1.5, 2.0, 4.0}) {
    const AnnulusParams params(r);
    for (int trial = 0; trial < 20; ++trial) {
      const int dim = 1 + static_cast<int>(rng.below(6));
      const ComplexMatrix T = gen_qa_operator(dim, params, rng);
      const auto d = dilate(T, params);
      CHECK(d.hat_T.rows() == 2 * dim);
      CHECK(d.defect_norm <= 1e-8 * params.c_r());
      for (const auto& [n, err] : d.compression_errors) {
        CHECK(err <= 1e-8 * std::max(1.0, std::pow(d.norm_T, std::abs(n))));
      }
      CHECK(d.verified);
      CHECK(membership(d.hat_T, params).is_qa_unitary);
    }
  }
}

TEST_CASE("associated unitary examples") {
  CHECK((associated_unitary(diag2(2.0, 0.5), R2) - ComplexMatrix::Identity(2, 2)).norm() <= 1e-15);
  const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
  CHECK((associated_unitary(half, R2) - ComplexMatrix::Identity(2, 2)).norm() <= 1e-15);
  const ComplexMatrix J = diag2(2.0 * std::polar(1.0, std::numbers::pi / 3), 0.5);
  CHECK(unitary_defect(associated_unitary(J, R2)) <= 1e-10);
  const ComplexMatrix Up = associated_unitary(half, R2, true);
  CHECK(Up.rows() == 4);
  CHECK(unitary_defect(Up) <= 1e-12);
  CHECK_THROWS_AS((void)associated_unitary(scalar(1.0), R2), PreconditionError);
}

TEST_CASE("associated unitary of dilations") {
  Philox rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix T = gen_qa_operator(3, R2, rng);
    const auto d = dilate(T, R2);
    CHECK(unitary_defect(associated_unitary(d.hat_T, R2, true)) <= 1e-8);
  }
}

TEST_CASE("tensor criterion examples") {
  const ComplexMatrix J = diag2(2.0, 0.5);
  const ComplexMatrix I2 = ComplexMatrix::Identity(2, 2);
  const auto a = tensor_criterion(0.4 * I2, 0.4 * I2, J, R2, CriterionMode::isometry);
  CHECK(a.operator_passes);
  CHECK(a.conditions_pass);
  CHECK(a.agree);

  const auto b = tensor_criterion(I2, I2, J, R2, CriterionMode::isometry);
  CHECK_FALSE(b.operator_passes);
  CHECK_FALSE(b.conditions_pass);
  CHECK(b.residuals[2] == doctest::Approx(5.25));

  const auto c = tensor_criterion((2.0 / 3.0) * I2, (-2.0 / 3.0) * I2, J, R2, CriterionMode::unitary);
  CHECK(c.residuals.size() == 6);
  CHECK(c.operator_passes);
  CHECK(c.conditions_pass);

  // ||J|| != r violates the hypothesis.
  CHECK_THROWS_AS((void)tensor_criterion(I2, I2, 0.5 * I2, R2, CriterionMode::isometry), PreconditionError);
}

TEST_CASE("scalar unitary family") {
  auto p = scalar_unitary_family(0.0, R2);
  CHECK(p.a.real() == doctest::Approx(0.4));
  CHECK(std::abs(p.b - Complex(0.4)) <= 1e-15);
  p = scalar_unitary_family(std::numbers::pi, R2);
  CHECK(p.a.real() == doctest::Approx(2.0 / 3.0));
  CHECK(std::abs(p.b - Complex(-2.0 / 3.0)) <= 1e-15);
  p = scalar_unitary_family(std::numbers::pi / 2, R2);
  CHECK(p.a.real() == doctest::Approx(0.48507).epsilon(1e-5));
  CHECK(std::abs(p.b - Complex(0.0, p.a.real())) <= 1e-15);

  const ComplexMatrix J = pad_to_extremal(ComplexMatrix::Identity(1, 1) * 2.0, R2);
  Philox rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const double theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const auto s = scalar_unitary_family(theta, R2);
    CHECK(std::abs(std::abs(s.a) - std::abs(s.b)) <= 1e-12);
    CHECK(std::abs(std::abs(2.0 * s.a + 0.5 * s.b) - 1.0) <= 1e-12);
    const auto t = tensor_criterion(ComplexMatrix::Constant(1, 1, s.a), ComplexMatrix::Constant(1, 1, s.b), J,
                                    R2, CriterionMode::unitary);
    CHECK(t.operator_passes);
    CHECK(t.conditions_pass);
  }
}

TEST_CASE("tensor criterion verdicts agree in both directions") {
  Philox rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const auto J = test::extremal_qa_unitary(2 + trial % 3, R2, rng);
    auto [A, B] = test::condition_pair(1 + trial % 3, R2, rng);
    const auto good = tensor_criterion(A, B, J, R2, CriterionMode::isometry);
    CHECK(good.operator_passes);
    CHECK(good.conditions_pass);
    CHECK(good.residuals[0] <= 1e-10);

    B += 0.05 * test::gaussian_matrix(static_cast<int>(B.rows()), static_cast<int>(B.cols()), rng);
    const auto bad = tensor_criterion(A, B, J, R2, CriterionMode::isometry);
    CHECK(bad.agree);
    CHECK_FALSE(bad.conditions_pass);
    CHECK_FALSE(bad.operator_passes);
  }
}
