#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace qasl {

using Complex = std::complex<double>;

/// Dense square complex matrix; the model of every operator in the library.
using ComplexMatrix = Eigen::MatrixXcd;

/// Absolute/relative tolerance pair. A residual x measured against a quantity
/// of size `scale` is admitted when x <= abs + rel * scale.
struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-8;

  [[nodiscard]] bool admits(double residual, double scale = 0.0) const {
    return residual <= abs + rel * scale;
  }
};

/// Default cap on the dimension of any matrix built by kron().
inline constexpr std::size_t kDefaultDimensionCap = 4096;

/// Throws InputError unless M is square with finite entries.
void require_square_finite(const ComplexMatrix& M, const char* what = "matrix");

[[nodiscard]] bool is_finite(const ComplexMatrix& M);

/// Singular values in non-increasing order.
[[nodiscard]] Eigen::VectorXd singular_values(const ComplexMatrix& M);

/// Largest singular value.
[[nodiscard]] double op_norm(const ComplexMatrix& M);

[[nodiscard]] double min_singular_value(const ComplexMatrix& M);

/// True when the smallest singular value exceeds tol.abs.
[[nodiscard]] bool is_invertible(const ComplexMatrix& M, const Tolerance& tol = {});

/// Inverse of M; throws DomainError("not invertible") when M fails is_invertible.
[[nodiscard]] ComplexMatrix inverse(const ComplexMatrix& M, const Tolerance& tol = {});

[[nodiscard]] double hermitian_defect(const ComplexMatrix& M);

/// Spectral data of a Hermitian matrix: M = V diag(values) V*.
/// Functions built from one decomposition share an eigenbasis and commute.
struct HermitianEigen {
  Eigen::VectorXd values;  // ascending
  ComplexMatrix vectors;

  /// V diag(f(values)) V*.
  [[nodiscard]] ComplexMatrix apply(const std::function<double(double)>& f) const;
};

/// Eigendecomposition of M; throws InputError unless M is Hermitian within tol.abs.
[[nodiscard]] HermitianEigen hermitian_eigen(const ComplexMatrix& M, const Tolerance& tol = {});

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-tol.abs, 0) are clamped to 0; anything lower raises InputError("not PSD").
[[nodiscard]] ComplexMatrix psd_sqrt(const ComplexMatrix& M, const Tolerance& tol = {});

/// Kronecker product; ResourceError if the result dimension exceeds cap.
[[nodiscard]] ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B,
                                 std::size_t cap = kDefaultDimensionCap);

/// Top-left k x k block.
[[nodiscard]] ComplexMatrix compress(const ComplexMatrix& M, Eigen::Index k);

/// Block diagonal A (+) B.
[[nodiscard]] ComplexMatrix direct_sum(const ComplexMatrix& A, const ComplexMatrix& B);

/// M^n for any integer n; negative powers use the supplied inverse.
[[nodiscard]] ComplexMatrix integer_power(const ComplexMatrix& M, const ComplexMatrix& M_inv, int n);

/// Operator-norm distance of M*M from the identity.
[[nodiscard]] double isometry_defect(const ComplexMatrix& M);

/// max(||M*M - I||, ||MM* - I||).
[[nodiscard]] double unitary_defect(const ComplexMatrix& M);

}  // namespace qasl
