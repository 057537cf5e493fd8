#pragma once

// The annulus as the hyperbola zw = 1/r^2 in the bidisc, the lift of a QA_r
// operator to a pair on the biball variety zw = 1/c_r, and a numerical probe
// of where sup norms are attained.

#include <utility>
#include <vector>

#include "qasl/laurent.hpp"
#include "qasl/qannulus.hpp"
#include "qasl/supnorm.hpp"

namespace qasl {

struct VarietyPoint {
  Complex z;
  Complex w;
  double residual_H = 0.0;   // |zw - 1/r^2|
  double residual_q0 = 0.0;  // |zw - 1/c_r|

  [[nodiscard]] bool on_hyperbola(const Tolerance& tol = {}) const;
  [[nodiscard]] bool on_biball_variety(const Tolerance& tol = {}) const;
};

[[nodiscard]] VarietyPoint make_point(Complex z, Complex w, const AnnulusParams& params);

/// (z/r, 1/(rz)). Throws DomainError for z = 0.
[[nodiscard]] VarietyPoint phi_forward(Complex z, const AnnulusParams& params);
/// r z.
[[nodiscard]] Complex phi_inverse(Complex z, const AnnulusParams& params);
/// (a_r z, a_r / z). Throws DomainError for z = 0.
[[nodiscard]] VarietyPoint biball_map(Complex z, const AnnulusParams& params);

struct EigenPair {
  Complex lambda;  // eigenvalue of A_hat
  Complex mu;      // matching eigenvalue of B_hat in the shared triangularization
  double residual = 0.0;  // |lambda mu - 1/c_r|
  bool in_biball = false; // |lambda|^2 + |mu|^2 <= 1 + tol.abs
};

struct BiballLift {
  ComplexMatrix hat_T;
  ComplexMatrix A_hat;  // a_r hat_T
  ComplexMatrix B_hat;  // a_r hat_T^-1
  ComplexMatrix U;      // sqrt(r^4+1)/(r^2+1) (A_hat + B_hat*)
  double unitary_defect = 0.0;
  double product_defect = 0.0;     // ||A_hat B_hat - I/c_r||
  double commutator_defect = 0.0;  // ||A_hat B_hat - B_hat A_hat||
  std::vector<EigenPair> pairs;
  double max_eig_residual = 0.0;
};

/// Throws PreconditionError unless T is in QA_r.
[[nodiscard]] BiballLift biball_lift(const ComplexMatrix& T, const AnnulusParams& params,
                                     const Tolerance& tol = {});

/// f(z, w) with f(a_r z, a_r / z) = g(z): z^k -> (z/a_r)^k and z^-k -> (w/a_r)^k.
/// Throws InputError unless g is one-variable.
[[nodiscard]] LaurentPoly biball_function(const LaurentPoly& g, const AnnulusParams& params);

struct BiballRoute {
  double lifted_norm = 0.0;        // ||f(A_hat, B_hat)||
  double operator_norm = 0.0;      // ||g(T)||
  double extension_error = 0.0;    // ||P f(A_hat, B_hat) P - g(T)||
  double lift_identity_error = 0.0;  // ||f(A_hat, B_hat) - g(hat_T)||
  double unitary_defect = 0.0;
  double max_eig_residual = 0.0;
};

[[nodiscard]] BiballRoute biball_route(const ComplexMatrix& T, const LaurentPoly& g,
                                       const AnnulusParams& params, const Tolerance& tol = {});

/// f(z, w) pulled back through phi: f(alpha/r, 1/(r alpha)).
/// Throws InputError unless f is two-variable.
[[nodiscard]] LaurentPoly pullback_phi(const LaurentPoly& f, const AnnulusParams& params);

struct BoundaryProbe {
  double sup_value = 0.0;
  double arg_radius = 0.0;
  bool boundary_attained = false;
  std::vector<double> radii;
  std::vector<double> circle_sups;
};

/// Sup of |f o phi| on circles with radii log-spaced over [1/r, r] (endpoints
/// included). The boundary is attained when no interior circle beats both
/// boundary circles by more than the certified grid error.
[[nodiscard]] BoundaryProbe boundary_probe(const LaurentPoly& f, const AnnulusParams& params,
                                           int n_radii = 33, int samples_per_circle = 0);

}  // namespace qasl
