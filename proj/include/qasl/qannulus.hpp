#pragma once

// Quantum annulus QA_r: invertible T with ||T||, ||T^-1|| <= r.

#include <map>
#include <string>
#include <vector>

#include "qasl/linalg.hpp"

namespace qasl {

/// Annulus radius r > 1 with the constants every construction reuses.
class AnnulusParams {
 public:
  /// Throws InputError unless r is finite and r > 1.
  explicit AnnulusParams(double r);

  [[nodiscard]] double r() const { return r_; }
  [[nodiscard]] double r2() const { return r2_; }
  [[nodiscard]] double rinv2() const { return rinv2_; }
  /// r^2 + r^-2
  [[nodiscard]] double c_r() const { return c_r_; }
  /// 1 / sqrt(c_r)
  [[nodiscard]] double a_r() const { return a_r_; }

 private:
  double r_;
  double r2_;
  double rinv2_;
  double c_r_;
  double a_r_;
};

/// Tolerance used for the sign of beta: eigenvalues in [-1e-10 c_r, 0) count as zero.
[[nodiscard]] Tolerance beta_tolerance(const AnnulusParams& params);

/// beta(T*, T) = c_r I - T*T - (T*T)^-1. Throws DomainError("not invertible").
[[nodiscard]] ComplexMatrix beta_defect(const ComplexMatrix& T, const AnnulusParams& params,
                                        const Tolerance& tol = {});

struct Membership {
  bool in_qa = false;          // norm route: max(||T||, ||T^-1||) <= r + tol.abs
  bool in_qa_beta = false;     // beta route: min eig beta >= -1e-10 c_r
  bool routes_agree = false;
  bool is_qa_unitary = false;  // ||beta|| <= tol.abs
  double norm_T = 0.0;
  double norm_Tinv = 0.0;
  double min_beta_eig = 0.0;
  std::string reason;          // empty when in_qa
};

[[nodiscard]] Membership membership(const ComplexMatrix& T, const AnnulusParams& params,
                                    const Tolerance& tol = {});

struct DilationResult {
  ComplexMatrix hat_T;       // [[T, T (T*T)^-1/2 beta^1/2], [0, T^-*]]
  ComplexMatrix hat_T_inv;   // [[T^-1, -beta^1/2 (T*T)^-1/2 T*], [0, T*]]
  double defect_norm = 0.0;  // ||beta(hat_T*, hat_T)||
  double inverse_error = 0.0;         // ||hat_T hat_T_inv - I||
  double gram_block_error = 0.0;      // ||hat_T* hat_T - block form||
  std::map<int, double> compression_errors;  // n -> ||P hat_T^n P - T^n||
  double norm_T = 0.0;
  bool verified = false;  // all of the above within their thresholds
};

/// Explicit H (+) H extension of T to a quantum annulus unitary, with the
/// compression identity checked for n in [n_min, n_max].
/// Throws PreconditionError unless membership(T).in_qa.
[[nodiscard]] DilationResult dilate(const ComplexMatrix& T, const AnnulusParams& params,
                                    int n_min = -4, int n_max = 4, const Tolerance& tol = {});

/// U = r (1 + r^2)^-1 (J + J^-*), optionally on J (+) r I_1 (+) r^-1 I_1.
/// Throws PreconditionError unless ||beta(J*, J)|| <= tol.abs.
[[nodiscard]] ComplexMatrix associated_unitary(const ComplexMatrix& J, const AnnulusParams& params,
                                               bool pad = false, const Tolerance& tol = {});

/// J (+) r I_1 (+) r^-1 I_1, so that ||J0|| = ||J0^-1|| = r.
[[nodiscard]] ComplexMatrix pad_to_extremal(const ComplexMatrix& J, const AnnulusParams& params);

enum class CriterionMode { isometry, unitary };

struct TensorCriterion {
  bool operator_passes = false;
  bool conditions_pass = false;
  bool agree = false;
  /// [||C*C - I||, ||A*A - B*B||, ||A*B + B*A + c_r A*A - I||] and, in unitary
  /// mode, [||CC* - I||, ||AA* - BB*||, ||AB* + BA* + c_r AA* - I||] appended.
  std::vector<double> residuals;
  [[nodiscard]] double operator_defect() const;
  [[nodiscard]] double condition_defect() const;
};

/// Tests whether C = A (x) J + B (x) J^-* is an isometry (or unitary) both
/// directly and through the algebraic conditions on (A, B).
/// Throws PreconditionError unless J is a QA unitary with ||J|| = ||J^-1|| = r.
[[nodiscard]] TensorCriterion tensor_criterion(const ComplexMatrix& A, const ComplexMatrix& B,
                                               const ComplexMatrix& J, const AnnulusParams& params,
                                               CriterionMode mode, const Tolerance& tol = {});

struct ScalarPair {
  Complex a;
  Complex b;
};

/// a = (c_r + 2 cos theta)^-1/2 (real, positive), b = a e^{i theta}.
[[nodiscard]] ScalarPair scalar_unitary_family(double theta, const AnnulusParams& params);

}  // namespace qasl
