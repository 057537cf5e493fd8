#pragma once

#include <cmath>

#include "qasl/harness.hpp"
#include "qasl/linalg.hpp"
#include "qasl/qannulus.hpp"
#include "qasl/rng.hpp"

namespace qasl::test {

inline ComplexMatrix gaussian_matrix(int rows, int cols, Philox& rng) {
  ComplexMatrix M(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) M(i, j) = rng.complex_normal();
  }
  return M;
}

// Largest singular value by power iteration on M*M; independent of the SVD.
inline double power_norm(const ComplexMatrix& M, int iterations = 5000) {
  const ComplexMatrix G = M.adjoint() * M;
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(M.cols());
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXcd w = G * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    lambda = nw / v.norm();
    v = w / nw;
  }
  return std::sqrt(lambda);
}

inline double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// V diag(s) W* with every s_i in {r, 1/r} and both values present, so that
// beta(J*, J) = 0 and ||J|| = ||J^-1|| = r.
inline ComplexMatrix extremal_qa_unitary(int dim, const AnnulusParams& params, Philox& rng) {
  Eigen::VectorXd s(dim);
  for (int i = 0; i < dim; ++i) s(i) = rng.uniform() < 0.5 ? params.r() : 1.0 / params.r();
  s(0) = params.r();
  if (dim > 1) s(1) = 1.0 / params.r();
  const ComplexMatrix V = haar_unitary(dim, rng);
  const ComplexMatrix W = haar_unitary(dim, rng);
  return V * s.cast<Complex>().asDiagonal() * W.adjoint();
}

struct CriterionPair {
  ComplexMatrix A;
  ComplexMatrix B;
};

// A = V diag(a_i) W*, B = V diag(b_i) W* with (a_i, b_i) from the scalar
// family: A*A = B*B and A*B + B*A + c_r A*A = I hold exactly.
inline CriterionPair condition_pair(int dim, const AnnulusParams& params, Philox& rng) {
  Eigen::VectorXcd a(dim);
  Eigen::VectorXcd b(dim);
  for (int i = 0; i < dim; ++i) {
    const auto s = scalar_unitary_family(rng.uniform(-3.141592653589793, 3.141592653589793), params);
    const Complex phase = std::polar(1.0, rng.uniform(0.0, 6.283185307179586));
    a(i) = phase * s.a;
    b(i) = phase * s.b;
  }
  const ComplexMatrix V = haar_unitary(dim, rng);
  const ComplexMatrix W = haar_unitary(dim, rng);
  return {V * a.asDiagonal() * W.adjoint(), V * b.asDiagonal() * W.adjoint()};
}

}  // namespace qasl::test
