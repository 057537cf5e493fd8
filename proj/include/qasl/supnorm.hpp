#pragma once

// Certified sup norms of Laurent polynomials on products of circles.
//
// |g| is sampled on an N-point uniform grid per circle. Between grid points
// |g| can exceed the sampled maximum by at most D * pi / N, where
// D = sum_nu |a_nu| (sum_i |nu_i|) prod rho_i^nu_i bounds the sum of the
// angular partial derivatives. The best grid point is then polished by a
// coordinate-wise golden-section search, which can only raise the value.

#include <vector>

#include "qasl/laurent.hpp"

namespace qasl {

enum class BoundaryKind {
  polyannulus_distinguished,  // the 2^n tori with radii in {r, 1/r}
  polycircle_r,               // the single torus (rT)^n
};

struct BoundarySpec {
  BoundaryKind kind = BoundaryKind::polyannulus_distinguished;
  double r = 2.0;
  int samples_per_circle = 256;

  /// max(256, 32 * max_abs_degree(g)).
  [[nodiscard]] static int sample_floor(const LaurentPoly& g);
  /// Boundary at the sample floor of g.
  [[nodiscard]] static BoundarySpec for_poly(const LaurentPoly& g, BoundaryKind kind, double r);
};

struct SupNorm {
  double value = 0.0;
  /// true sup - value lies in [0, certified_error].
  double certified_error = 0.0;
  std::vector<double> arg_radii;
  std::vector<double> arg_angles;

  [[nodiscard]] double upper() const { return value + certified_error; }
  [[nodiscard]] double relative_error() const { return value > 0.0 ? certified_error / value : 0.0; }
};

/// Sup of |g| over the torus prod_i { |z_i| = radii[i] }.
/// Throws InputError on a radius/arity mismatch, a nonpositive radius or N < 8.
[[nodiscard]] SupNorm sup_on_torus(const LaurentPoly& g, const std::vector<double>& radii, int N);

/// Sup over the boundary described by spec.
/// Throws InputError when spec.samples_per_circle is below the sample floor of g
/// or spec.r <= 1.
[[nodiscard]] SupNorm sup_norm(const LaurentPoly& g, const BoundarySpec& spec);

enum class EstimateKind {
  pair_parts,  // the four constants of pair_part_bounds (n = 2)
  sign_parts,  // mu_estimate_bound for every sign pattern
};

struct PartEstimate {
  SignPattern pattern;
  double part_sup = 0.0;
  double part_error = 0.0;
  double ratio = 0.0;  // part_sup / g_sup
  double bound = 0.0;
  bool pass = false;
};

struct DecompositionReport {
  EstimateKind kind = EstimateKind::sign_parts;
  SupNorm g_sup;
  std::vector<DecompositionPart> parts;
  std::vector<PartEstimate> estimates;
  bool all_pass = false;
};

/// Measures each part on (rT)^n against the certified sup of g on the
/// polyannulus. A part passes when ratio <= bound * (1 + part_rel_err + g_rel_err).
/// Throws InputError when kind = pair_parts and g is not two-variable.
/// samples_per_circle = 0 selects the sample floor of g.
[[nodiscard]] DecompositionReport verify_decomposition_estimates(const LaurentPoly& g,
                                                                 const AnnulusParams& params,
                                                                 EstimateKind kind,
                                                                 int samples_per_circle = 0);

}  // namespace qasl
