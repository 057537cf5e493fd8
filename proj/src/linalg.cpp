#include "qasl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qasl/error.hpp"

namespace qasl {

bool is_finite(const ComplexMatrix& M) {
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      const Complex z = M(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

void require_square_finite(const ComplexMatrix& M, const char* what) {
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw InputError(std::string(what) + ": expected a non-empty square matrix, got " +
                     std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
  }
  if (!is_finite(M)) throw InputError(std::string(what) + ": non-finite entries");
}

Eigen::VectorXd singular_values(const ComplexMatrix& M) {
  require_square_finite(M);
  // Two-sided Jacobi. Eigen 3.4.0's BDCSVD returns wrong values for clustered
  // spectra (such as I (x) S (x) I) once the divide-and-conquer path kicks in.
  Eigen::JacobiSVD<ComplexMatrix> svd(M);
  return svd.singularValues();
}

double op_norm(const ComplexMatrix& M) {
  const auto s = singular_values(M);
  return s.size() == 0 ? 0.0 : s(0);
}

double min_singular_value(const ComplexMatrix& M) {
  const auto s = singular_values(M);
  return s(s.size() - 1);
}

bool is_invertible(const ComplexMatrix& M, const Tolerance& tol) {
  return min_singular_value(M) > tol.abs;
}

ComplexMatrix inverse(const ComplexMatrix& M, const Tolerance& tol) {
  if (!is_invertible(M, tol)) throw DomainError("not invertible");
  return M.partialPivLu().inverse();
}

double hermitian_defect(const ComplexMatrix& M) {
  return op_norm(ComplexMatrix(M - M.adjoint()));
}

ComplexMatrix HermitianEigen::apply(const std::function<double(double)>& f) const {
  Eigen::VectorXd fv(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) fv(i) = f(values(i));
  return vectors * fv.cast<Complex>().asDiagonal() * vectors.adjoint();
}

HermitianEigen hermitian_eigen(const ComplexMatrix& M, const Tolerance& tol) {
  require_square_finite(M, "hermitian_eigen");
  if (hermitian_defect(M) > tol.abs) throw InputError("matrix is not Hermitian");
  // Symmetrize so the solver sees exactly what the tolerance admitted.
  const ComplexMatrix H = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
  if (es.info() != Eigen::Success) throw InputError("Hermitian eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

ComplexMatrix psd_sqrt(const ComplexMatrix& M, const Tolerance& tol) {
  const auto eig = hermitian_eigen(M, tol);
  if (eig.values.size() > 0 && eig.values(0) < -tol.abs) {
    throw InputError("not PSD: smallest eigenvalue " + std::to_string(eig.values(0)));
  }
  return eig.apply([](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B, std::size_t cap) {
  require_square_finite(A, "kron lhs");
  require_square_finite(B, "kron rhs");
  const auto na = static_cast<std::size_t>(A.rows());
  const auto nb = static_cast<std::size_t>(B.rows());
  if (na > cap / nb) {
    throw ResourceError("kron: dimension " + std::to_string(na) + "*" + std::to_string(nb) +
                        " exceeds cap " + std::to_string(cap));
  }
  ComplexMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return K;
}

ComplexMatrix compress(const ComplexMatrix& M, Eigen::Index k) {
  return M.topLeftCorner(k, k);
}

ComplexMatrix direct_sum(const ComplexMatrix& A, const ComplexMatrix& B) {
  ComplexMatrix S = ComplexMatrix::Zero(A.rows() + B.rows(), A.cols() + B.cols());
  S.topLeftCorner(A.rows(), A.cols()) = A;
  S.bottomRightCorner(B.rows(), B.cols()) = B;
  return S;
}

ComplexMatrix integer_power(const ComplexMatrix& M, const ComplexMatrix& M_inv, int n) {
  const ComplexMatrix& base = n >= 0 ? M : M_inv;
  ComplexMatrix result = ComplexMatrix::Identity(M.rows(), M.cols());
  for (int k = 0; k < std::abs(n); ++k) result = result * base;
  return result;
}

double isometry_defect(const ComplexMatrix& M) {
  const auto k = M.cols();
  return op_norm(ComplexMatrix(M.adjoint() * M - ComplexMatrix::Identity(k, k)));
}

double unitary_defect(const ComplexMatrix& M) {
  const auto k = M.rows();
  return std::max(isometry_defect(M),
                  op_norm(ComplexMatrix(M * M.adjoint() - ComplexMatrix::Identity(k, k))));
}

}  // namespace qasl
