#include "qasl/qannulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qasl/error.hpp"

namespace qasl {

AnnulusParams::AnnulusParams(double r) : r_(r) {
  if (!std::isfinite(r) || !(r > 1.0)) {
    throw InputError("annulus radius must satisfy r > 1, got " + std::to_string(r));
  }
  r2_ = r * r;
  rinv2_ = 1.0 / r2_;
  c_r_ = r2_ + rinv2_;
  a_r_ = 1.0 / std::sqrt(c_r_);
}

Tolerance beta_tolerance(const AnnulusParams& params) {
  return Tolerance{1e-10 * params.c_r(), 0.0};
}

namespace {

ComplexMatrix symmetrize(const ComplexMatrix& M) { return 0.5 * (M + M.adjoint()); }

// beta from T and a precomputed inverse.
ComplexMatrix beta_from(const ComplexMatrix& T, const ComplexMatrix& T_inv,
                        const AnnulusParams& params) {
  const auto k = T.rows();
  const ComplexMatrix gram = T.adjoint() * T;
  const ComplexMatrix gram_inv = T_inv * T_inv.adjoint();
  return symmetrize(params.c_r() * ComplexMatrix::Identity(k, k) - gram - gram_inv);
}

double smallest_eigenvalue(const ComplexMatrix& H) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(symmetrize(H), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

ComplexMatrix beta_defect(const ComplexMatrix& T, const AnnulusParams& params, const Tolerance& tol) {
  require_square_finite(T, "beta_defect");
  return beta_from(T, inverse(T, tol), params);
}

Membership membership(const ComplexMatrix& T, const AnnulusParams& params, const Tolerance& tol) {
  require_square_finite(T, "membership");
  Membership m;
  const auto sv = singular_values(T);
  const double s_max = sv(0);
  const double s_min = sv(sv.size() - 1);
  m.norm_T = s_max;
  if (!(s_min > tol.abs)) {
    m.norm_Tinv = std::numeric_limits<double>::infinity();
    m.min_beta_eig = -std::numeric_limits<double>::infinity();
    m.routes_agree = true;
    m.reason = "not invertible";
    return m;
  }
  m.norm_Tinv = 1.0 / s_min;
  m.in_qa = std::max(m.norm_T, m.norm_Tinv) <= params.r() + tol.abs;

  // Independent route: sign of beta from its own eigendecomposition.
  const ComplexMatrix beta = beta_from(T, T.partialPivLu().inverse(), params);
  m.min_beta_eig = smallest_eigenvalue(beta);
  m.in_qa_beta = m.min_beta_eig >= -beta_tolerance(params).abs;
  m.routes_agree = m.in_qa == m.in_qa_beta;
  m.is_qa_unitary = op_norm(beta) <= tol.abs;
  if (!m.in_qa) {
    m.reason = m.norm_T > m.norm_Tinv ? "norm of T exceeds r" : "norm of T^-1 exceeds r";
  }
  return m;
}

DilationResult dilate(const ComplexMatrix& T, const AnnulusParams& params, int n_min, int n_max,
                      const Tolerance& tol) {
  const auto mem = membership(T, params, tol);
  if (!mem.in_qa) throw PreconditionError("dilate: operator is not in QA_r (" + mem.reason + ")");

  const auto k = T.rows();
  const double c_r = params.c_r();
  const ComplexMatrix gram = T.adjoint() * T;
  // One eigendecomposition of T*T carries (T*T)^{+-1/2} and beta^{1/2}, so the
  // factors commute in floating point as they do exactly.
  const auto eig = hermitian_eigen(symmetrize(gram), Tolerance{1e-10 * std::max(1.0, op_norm(gram)), 0.0});
  const auto beta_root = [c_r](double lambda) {
    return std::sqrt(std::max(0.0, c_r - lambda - 1.0 / lambda));
  };
  const ComplexMatrix coupling = eig.apply([&](double l) { return beta_root(l) / std::sqrt(l); });
  const ComplexMatrix gram_root_beta_root =
      eig.apply([&](double l) { return std::sqrt(l) * beta_root(l); });

  const ComplexMatrix T_inv = T.partialPivLu().inverse();

  DilationResult out;
  out.norm_T = mem.norm_T;
  out.hat_T = ComplexMatrix::Zero(2 * k, 2 * k);
  out.hat_T.topLeftCorner(k, k) = T;
  out.hat_T.topRightCorner(k, k) = T * coupling;
  out.hat_T.bottomRightCorner(k, k) = T_inv.adjoint();

  out.hat_T_inv = ComplexMatrix::Zero(2 * k, 2 * k);
  out.hat_T_inv.topLeftCorner(k, k) = T_inv;
  out.hat_T_inv.topRightCorner(k, k) = -coupling * T.adjoint();
  out.hat_T_inv.bottomRightCorner(k, k) = T.adjoint();

  const ComplexMatrix I2 = ComplexMatrix::Identity(2 * k, 2 * k);
  out.inverse_error = op_norm(ComplexMatrix(out.hat_T * out.hat_T_inv - I2));
  out.defect_norm = op_norm(beta_from(out.hat_T, out.hat_T_inv, params));

  ComplexMatrix gram_block(2 * k, 2 * k);
  gram_block.topLeftCorner(k, k) = gram;
  gram_block.topRightCorner(k, k) = gram_root_beta_root;
  gram_block.bottomLeftCorner(k, k) = gram_root_beta_root.adjoint();
  gram_block.bottomRightCorner(k, k) = c_r * ComplexMatrix::Identity(k, k) - gram;
  const ComplexMatrix hat_gram = out.hat_T.adjoint() * out.hat_T;
  out.gram_block_error = op_norm(ComplexMatrix(hat_gram - gram_block));

  bool ok = out.defect_norm <= 1e-8 * c_r;
  ok = ok && out.inverse_error <= 1e-8 * std::max(1.0, op_norm(out.hat_T) * op_norm(out.hat_T_inv));
  ok = ok && tol.admits(out.gram_block_error, op_norm(hat_gram));
  for (int n = n_min; n <= n_max; ++n) {
    const ComplexMatrix lifted = compress(integer_power(out.hat_T, out.hat_T_inv, n), k);
    const double err = op_norm(ComplexMatrix(lifted - integer_power(T, T_inv, n)));
    out.compression_errors[n] = err;
    ok = ok && err <= 1e-8 * std::max(1.0, std::pow(mem.norm_T, std::abs(n)));
  }
  out.verified = ok;
  return out;
}

ComplexMatrix pad_to_extremal(const ComplexMatrix& J, const AnnulusParams& params) {
  ComplexMatrix tail = ComplexMatrix::Zero(2, 2);
  tail(0, 0) = params.r();
  tail(1, 1) = 1.0 / params.r();
  return direct_sum(J, tail);
}

ComplexMatrix associated_unitary(const ComplexMatrix& J, const AnnulusParams& params, bool pad,
                                 const Tolerance& tol) {
  require_square_finite(J, "associated_unitary");
  const double defect = op_norm(beta_defect(J, params, tol));
  if (defect > tol.abs) {
    throw PreconditionError("associated_unitary: beta(J*, J) != 0 (norm " + std::to_string(defect) + ")");
  }
  const ComplexMatrix J0 = pad ? pad_to_extremal(J, params) : J;
  const ComplexMatrix J0_inv_adj = inverse(J0, tol).adjoint();
  return (params.r() / (1.0 + params.r2())) * (J0 + J0_inv_adj);
}

double TensorCriterion::operator_defect() const {
  double d = residuals.empty() ? 0.0 : residuals[0];
  if (residuals.size() > 3) d = std::max(d, residuals[3]);
  return d;
}

double TensorCriterion::condition_defect() const {
  double d = 0.0;
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    if (i % 3 != 0) d = std::max(d, residuals[i]);
  }
  return d;
}

TensorCriterion tensor_criterion(const ComplexMatrix& A, const ComplexMatrix& B, const ComplexMatrix& J,
                                 const AnnulusParams& params, CriterionMode mode, const Tolerance& tol) {
  require_square_finite(A, "tensor_criterion A");
  require_square_finite(B, "tensor_criterion B");
  require_square_finite(J, "tensor_criterion J");
  if (A.rows() != B.rows()) throw InputError("tensor_criterion: A and B must have equal dimension");

  const double r = params.r();
  const double beta_norm = op_norm(beta_defect(J, params, tol));
  if (beta_norm > tol.abs) {
    throw PreconditionError("tensor_criterion: J is not a quantum annulus unitary");
  }
  const ComplexMatrix J_inv = inverse(J, tol);
  const double norm_J = op_norm(J);
  const double norm_J_inv = op_norm(J_inv);
  if (!tol.admits(std::abs(norm_J - r), r) || !tol.admits(std::abs(norm_J_inv - r), r)) {
    throw PreconditionError("tensor_criterion: requires ||J|| = ||J^-1|| = r");
  }

  const auto d = A.rows();
  const ComplexMatrix I = ComplexMatrix::Identity(d, d);
  const double c_r = params.c_r();
  const ComplexMatrix C = kron(A, J) + kron(B, J_inv.adjoint());

  TensorCriterion out;
  out.residuals.push_back(isometry_defect(C));
  out.residuals.push_back(op_norm(ComplexMatrix(A.adjoint() * A - B.adjoint() * B)));
  out.residuals.push_back(
      op_norm(ComplexMatrix(A.adjoint() * B + B.adjoint() * A + c_r * A.adjoint() * A - I)));
  if (mode == CriterionMode::unitary) {
    const auto n = C.rows();
    out.residuals.push_back(op_norm(ComplexMatrix(C * C.adjoint() - ComplexMatrix::Identity(n, n))));
    out.residuals.push_back(op_norm(ComplexMatrix(A * A.adjoint() - B * B.adjoint())));
    out.residuals.push_back(
        op_norm(ComplexMatrix(A * B.adjoint() + B * A.adjoint() + c_r * A * A.adjoint() - I)));
  }
  out.operator_passes = tol.admits(out.operator_defect(), 1.0);
  out.conditions_pass = tol.admits(out.condition_defect(), 1.0);
  out.agree = out.operator_passes == out.conditions_pass;
  return out;
}

ScalarPair scalar_unitary_family(double theta, const AnnulusParams& params) {
  const double a = 1.0 / std::sqrt(params.c_r() + 2.0 * std::cos(theta));
  return {Complex(a, 0.0), a * std::polar(1.0, theta)};
}

}  // namespace qasl
