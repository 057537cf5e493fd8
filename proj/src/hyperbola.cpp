#include "qasl/hyperbola.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qasl/error.hpp"

namespace qasl {

bool VarietyPoint::on_hyperbola(const Tolerance& tol) const {
  return residual_H <= tol.abs && std::max(std::abs(z), std::abs(w)) <= 1.0 + tol.abs;
}

bool VarietyPoint::on_biball_variety(const Tolerance& tol) const {
  return residual_q0 <= tol.abs && std::norm(z) + std::norm(w) <= 1.0 + tol.abs;
}

VarietyPoint make_point(Complex z, Complex w, const AnnulusParams& params) {
  VarietyPoint p{z, w, 0.0, 0.0};
  p.residual_H = std::abs(z * w - params.rinv2());
  p.residual_q0 = std::abs(z * w - 1.0 / params.c_r());
  return p;
}

VarietyPoint phi_forward(Complex z, const AnnulusParams& params) {
  if (z == Complex(0.0)) throw DomainError("phi_forward: z = 0");
  return make_point(z / params.r(), 1.0 / (params.r() * z), params);
}

Complex phi_inverse(Complex z, const AnnulusParams& params) { return params.r() * z; }

VarietyPoint biball_map(Complex z, const AnnulusParams& params) {
  if (z == Complex(0.0)) throw DomainError("biball_map: z = 0");
  return make_point(params.a_r() * z, params.a_r() / z, params);
}

BiballLift biball_lift(const ComplexMatrix& T, const AnnulusParams& params, const Tolerance& tol) {
  const auto dil = dilate(T, params, 0, 0, tol);
  BiballLift out;
  out.hat_T = dil.hat_T;
  out.A_hat = params.a_r() * dil.hat_T;
  out.B_hat = params.a_r() * dil.hat_T_inv;
  const double r2 = params.r2();
  out.U = (std::sqrt(r2 * r2 + 1.0) / (r2 + 1.0)) * (out.A_hat + out.B_hat.adjoint());
  out.unitary_defect = unitary_defect(out.U);

  const auto d = out.A_hat.rows();
  const ComplexMatrix AB = out.A_hat * out.B_hat;
  out.product_defect = op_norm(ComplexMatrix(AB - ComplexMatrix::Identity(d, d) / params.c_r()));
  out.commutator_defect = op_norm(ComplexMatrix(AB - out.B_hat * out.A_hat));

  // One Schur basis triangularizes both members; the diagonals pair the eigenvalues.
  Eigen::ComplexSchur<ComplexMatrix> schur(out.A_hat);
  const ComplexMatrix& Q = schur.matrixU();
  const ComplexMatrix& R = schur.matrixT();
  const ComplexMatrix Bt = Q.adjoint() * out.B_hat * Q;
  for (Eigen::Index i = 0; i < d; ++i) {
    EigenPair p;
    p.lambda = R(i, i);
    p.mu = Bt(i, i);
    p.residual = std::abs(p.lambda * p.mu - 1.0 / params.c_r());
    p.in_biball = std::norm(p.lambda) + std::norm(p.mu) <= 1.0 + tol.abs;
    out.max_eig_residual = std::max(out.max_eig_residual, p.residual);
    out.pairs.push_back(p);
  }
  return out;
}

LaurentPoly biball_function(const LaurentPoly& g, const AnnulusParams& params) {
  if (g.n_vars() != 1) throw InputError("biball_function: g must be one-variable");
  LaurentPoly f(2);
  for (const auto& [exp, c] : g.coeffs()) {
    const int k = exp[0];
    const Complex scaled = c * std::pow(params.a_r(), -std::abs(k));
    if (k >= 0) {
      f.add({k, 0}, scaled);
    } else {
      f.add({0, -k}, scaled);
    }
  }
  return f;
}

BiballRoute biball_route(const ComplexMatrix& T, const LaurentPoly& g, const AnnulusParams& params,
                         const Tolerance& tol) {
  const auto lift = biball_lift(T, params, tol);
  const auto f = biball_function(g, params);
  const ComplexMatrix fAB = eval_operators(f, OperatorTuple{{lift.A_hat, lift.B_hat}}, tol);
  const ComplexMatrix gH = eval_operators(g, OperatorTuple{{lift.hat_T}}, tol);
  const ComplexMatrix gT = eval_operators(g, OperatorTuple{{T}}, tol);
  BiballRoute out;
  out.lifted_norm = op_norm(fAB);
  out.operator_norm = op_norm(gT);
  out.extension_error = op_norm(ComplexMatrix(compress(fAB, T.rows()) - gT));
  out.lift_identity_error = op_norm(ComplexMatrix(fAB - gH));
  out.unitary_defect = lift.unitary_defect;
  out.max_eig_residual = lift.max_eig_residual;
  return out;
}

LaurentPoly pullback_phi(const LaurentPoly& f, const AnnulusParams& params) {
  if (f.n_vars() != 2) throw InputError("pullback_phi: f must be a function of (z, w)");
  LaurentPoly h(1);
  for (const auto& [exp, c] : f.coeffs()) {
    h.add({exp[0] - exp[1]}, c * std::pow(params.r(), -(exp[0] + exp[1])));
  }
  return h;
}

BoundaryProbe boundary_probe(const LaurentPoly& f, const AnnulusParams& params, int n_radii,
                             int samples_per_circle) {
  if (n_radii < 2) throw InputError("boundary_probe: need at least two radii");
  const auto h = pullback_phi(f, params);
  const int N = samples_per_circle > 0 ? samples_per_circle : BoundarySpec::sample_floor(h);
  BoundaryProbe out;
  std::vector<double> errors;
  for (int k = 0; k < n_radii; ++k) {
    double rho = std::pow(params.r(), -1.0 + 2.0 * k / (n_radii - 1));
    if (k == 0) rho = 1.0 / params.r();
    if (k == n_radii - 1) rho = params.r();
    const auto s = sup_on_torus(h, {rho}, N);
    out.radii.push_back(rho);
    out.circle_sups.push_back(s.value);
    errors.push_back(s.certified_error);
  }
  const auto best = std::max_element(out.circle_sups.begin(), out.circle_sups.end());
  const auto idx = static_cast<std::size_t>(best - out.circle_sups.begin());
  out.sup_value = *best;
  out.arg_radius = out.radii[idx];
  const std::size_t last = out.radii.size() - 1;
  const double edge = std::max(out.circle_sups.front(), out.circle_sups.back());
  const double edge_err = std::max(errors.front(), errors.back());
  out.boundary_attained = idx == 0 || idx == last || edge + edge_err + errors[idx] >= out.sup_value;
  return out;
}

}  // namespace qasl
