#include "qasl/bounds.hpp"

#include <cmath>

#include "qasl/error.hpp"
#include "qasl/parallel.hpp"

namespace qasl {

double annulus_bound(const AnnulusParams& params) {
  const double r2 = params.r2();
  return 2.0 * (1.0 + 2.0 * r2 / (r2 * r2 - 1.0));
}

double biannulus_bound(const AnnulusParams& params) {
  const double x = (params.r2() + 1.0) / (params.r2() - 1.0);
  return 4.0 + 4.0 * std::sqrt(x) + x * x;
}

double dc_poly_bound(const AnnulusParams& params, int n) {
  if (n < 1) throw InputError("dc_poly_bound: n must be >= 1");
  return std::pow((3.0 * params.r2() - 1.0) / (params.r2() - 1.0), n);
}

BoundCatalog bound_catalog(const AnnulusParams& params, int n_max) {
  if (n_max < 1) throw InputError("bound_catalog: n_max must be >= 1");
  BoundCatalog c;
  c.r = params.r();
  c.annulus = annulus_bound(params);
  c.biannulus = biannulus_bound(params);
  for (int n = 1; n <= n_max; ++n) {
    c.dc_poly.push_back(dc_poly_bound(params, n));
    c.dc_lower.push_back(std::pow(2.0, n));
    c.limit_caps.emplace_back(std::pow(2.0, n), std::pow(3.0, n));
  }
  c.pair_gap_strict = c.biannulus < dc_poly_bound(params, 2);
  return c;
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::annulus: return "annulus";
    case BoundKind::biannulus: return "biannulus";
    case BoundKind::dc_poly: return "dc_poly";
  }
  return "unknown";
}

BoundKind parse_bound_kind(const std::string& name) {
  if (name == "annulus") return BoundKind::annulus;
  if (name == "biannulus") return BoundKind::biannulus;
  if (name == "dc_poly") return BoundKind::dc_poly;
  throw InputError("unknown bound kind '" + name + "' (expected annulus, biannulus or dc_poly)");
}

double bound_value(BoundKind kind, const AnnulusParams& params, int n) {
  switch (kind) {
    case BoundKind::annulus: return annulus_bound(params);
    case BoundKind::biannulus: return biannulus_bound(params);
    case BoundKind::dc_poly: return dc_poly_bound(params, n);
  }
  return 0.0;
}

namespace {

void require_fit(BoundKind kind, const OperatorTuple& t) {
  bool ok = false;
  switch (kind) {
    case BoundKind::annulus: ok = t.size() == 1; break;
    case BoundKind::biannulus: ok = t.size() == 2; break;
    case BoundKind::dc_poly: ok = t.mode == CommutationMode::doubly_commuting && t.size() >= 1; break;
  }
  if (!ok) {
    throw InputError("bound kind " + to_string(kind) + " does not apply to a " + to_string(t.mode) +
                     " tuple of length " + std::to_string(t.size()));
  }
}

}  // namespace

BoundKind applicable_kind(const OperatorTuple& t) {
  if (t.size() == 1) return BoundKind::annulus;
  if (t.size() == 2) return BoundKind::biannulus;
  if (t.mode == CommutationMode::doubly_commuting) return BoundKind::dc_poly;
  throw InputError("no catalog bound for a commuting tuple of length " + std::to_string(t.size()));
}

RatioReport spectral_ratio(const OperatorTuple& t, const LaurentPoly& g, const AnnulusParams& params,
                           std::optional<BoundKind> kind, int samples_per_circle) {
  if (static_cast<int>(t.size()) != g.n_vars()) {
    throw InputError("spectral_ratio: tuple length does not match n_vars");
  }
  const BoundKind k = kind.value_or(applicable_kind(t));
  require_fit(k, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto m = membership(t.ops[i], params);
    if (!m.in_qa) {
      throw PreconditionError("spectral_ratio: member " + std::to_string(i) + " is not in QA_r (" +
                              m.reason + ")");
    }
  }
  RatioReport rep;
  rep.g_norm_operator = op_norm(eval_operators(g, t));
  BoundarySpec spec = BoundarySpec::for_poly(g, BoundaryKind::polyannulus_distinguished, params.r());
  if (samples_per_circle > 0) spec.samples_per_circle = samples_per_circle;
  const auto s = sup_norm(g, spec);
  rep.g_supnorm = s.value;
  rep.certified_error = s.certified_error;
  rep.bound_used = bound_value(k, params, static_cast<int>(t.size()));
  if (rep.g_supnorm > 0.0) {
    rep.ratio = rep.g_norm_operator / rep.g_supnorm;
    rep.pass = rep.ratio <= rep.bound_used * (1.0 + s.relative_error());
  } else {
    rep.ratio = rep.g_norm_operator == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    rep.pass = rep.g_norm_operator == 0.0;
  }
  return rep;
}

BoundSummary check_bound(const std::vector<BoundSample>& samples, const AnnulusParams& params,
                         BoundKind kind, unsigned workers) {
  for (const auto& s : samples) require_fit(kind, s.tuple);
  BoundSummary sum;
  sum.kind = kind;
  sum.rows.resize(samples.size());
  parallel_for(samples.size(), workers, [&](std::size_t i) {
    sum.rows[i] = spectral_ratio(samples[i].tuple, samples[i].poly, params, kind);
  });
  sum.all_pass = true;
  for (std::size_t i = 0; i < sum.rows.size(); ++i) {
    const auto& row = sum.rows[i];
    if (row.pass) ++sum.pass_count;
    sum.all_pass = sum.all_pass && row.pass;
    if (i == 0 || row.ratio > sum.max_ratio) {
      sum.max_ratio = row.ratio;
      sum.argmax = i;
    }
  }
  return sum;
}

DilationRouteReport dilation_route(const ComplexMatrix& T, const LaurentPoly& g,
                                   const AnnulusParams& params, const Tolerance& tol) {
  if (g.n_vars() != 1) throw InputError("dilation_route: g must be one-variable");
  const auto dil = dilate(T, params, 0, 0, tol);
  const ComplexMatrix J = pad_to_extremal(dil.hat_T, params);
  const ComplexMatrix U = associated_unitary(dil.hat_T, params, true, tol);
  const ComplexMatrix J_inv = inverse(J, tol);
  const auto k = T.rows();
  const double r = params.r();
  const double c = r / (1.0 + params.r2());

  DilationRouteReport rep;
  const ComplexMatrix gT = eval_operators(g, OperatorTuple{{T}});
  const ComplexMatrix gJ = eval_operators(g, OperatorTuple{{J}});
  rep.operator_norm = op_norm(gT);
  rep.lifted_norm = op_norm(gJ);
  rep.compression_error = op_norm(ComplexMatrix(compress(gJ, k) - gT));
  rep.unitary_defect = unitary_defect(U);

  const auto split = split_univariate(g);
  const auto dim = J.rows();
  const ComplexMatrix I = ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix gp = eval_operators(split.g_plus, OperatorTuple{{J}});
  const ComplexMatrix gm = eval_operators(split.g_minus, OperatorTuple{{J_inv}});
  const ComplexMatrix rhs =
      c * (U * (J * gp + split.a0 * I) * J.adjoint() + J_inv.adjoint() * (J_inv * gm + split.a0 * I) * U.adjoint() +
           U * gp + gm * U.adjoint());
  rep.identity_residual = op_norm(ComplexMatrix(U * gJ * U.adjoint() - rhs));

  rep.g_sup = sup_norm(g, BoundarySpec::for_poly(g, BoundaryKind::polyannulus_distinguished, r));

  LaurentPoly analytic = LaurentPoly::constant(1, split.a0);
  for (const auto& [e, a] : split.g_plus.coeffs()) analytic.add({e[0] + 1}, a);
  LaurentPoly principal = LaurentPoly::constant(1, split.a0);
  for (const auto& [e, a] : split.g_minus.coeffs()) principal.add({e[0] + 1}, a);
  const int N = BoundarySpec::sample_floor(g);
  const std::vector<const LaurentPoly*> parts = {&analytic, &principal, &split.g_plus, &split.g_minus};
  const double outer = params.r2() / (params.r2() - 1.0);
  const double inner = (2.0 * params.r2() - 1.0) / (r * (params.r2() - 1.0));
  const double g_upper = rep.g_sup.upper();

  bool terms_ok = true;
  double estimate = 0.0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto s = sup_on_torus(*parts[i], {r}, N);
    const double bound = (i < 2 ? outer : inner);
    rep.terms.push_back(s.value);
    rep.term_bounds.push_back(bound);
    terms_ok = terms_ok && s.value <= bound * g_upper;
    estimate += (i < 2 ? r : 1.0) * s.upper();
  }
  rep.estimate = c * estimate;

  const double scale = std::max(1.0, rep.lifted_norm);
  rep.pass = terms_ok && tol.admits(rep.compression_error, std::max(1.0, rep.operator_norm)) &&
             rep.unitary_defect <= 1e-8 && tol.admits(rep.identity_residual, scale) &&
             rep.operator_norm <= rep.lifted_norm * (1.0 + 1e-12) + tol.abs &&
             rep.lifted_norm <= rep.estimate * (1.0 + 1e-12) + tol.abs;
  return rep;
}

}  // namespace qasl
