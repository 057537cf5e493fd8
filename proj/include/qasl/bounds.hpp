#pragma once

// Closed-form spectral-constant bounds and measured spectral ratios.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qasl/laurent.hpp"
#include "qasl/qannulus.hpp"
#include "qasl/supnorm.hpp"

namespace qasl {

/// 2 (1 + 2r^2 / (r^4 - 1)): single operators in QA_r.
[[nodiscard]] double annulus_bound(const AnnulusParams& params);
/// 4 + 4 x^{1/2} + x^2 with x = (r^2 + 1)/(r^2 - 1): commuting pairs.
[[nodiscard]] double biannulus_bound(const AnnulusParams& params);
/// ((3r^2 - 1)/(r^2 - 1))^n: doubly commuting n-tuples.
[[nodiscard]] double dc_poly_bound(const AnnulusParams& params, int n);

struct BoundCatalog {
  double r = 0.0;
  double annulus = 0.0;
  double biannulus = 0.0;
  std::vector<double> dc_poly;   // index n - 1, n = 1..n_max
  double single_lower = 2.0;     // lower bound for a single operator
  std::vector<double> dc_lower;  // 2^n
  std::vector<std::pair<double, double>> limit_caps;  // (2^n, 3^n), the r -> infinity window
  bool pair_gap_strict = false;  // biannulus < dc_poly(2)
};

/// Throws InputError unless n_max >= 1.
[[nodiscard]] BoundCatalog bound_catalog(const AnnulusParams& params, int n_max);

enum class BoundKind { annulus, biannulus, dc_poly };

[[nodiscard]] std::string to_string(BoundKind kind);
/// Throws InputError on an unknown name.
[[nodiscard]] BoundKind parse_bound_kind(const std::string& name);

/// The bound of `kind` for an n-tuple.
[[nodiscard]] double bound_value(BoundKind kind, const AnnulusParams& params, int n);

/// Bound that applies to a tuple by shape: one operator -> annulus, a
/// commuting pair -> biannulus, a doubly commuting n-tuple (n != 2) -> dc_poly.
[[nodiscard]] BoundKind applicable_kind(const OperatorTuple& t);

struct RatioReport {
  double ratio = 0.0;  // g_norm_operator / g_supnorm
  double g_norm_operator = 0.0;
  double g_supnorm = 0.0;
  double certified_error = 0.0;
  double bound_used = 0.0;
  bool pass = false;  // ratio <= bound_used (1 + certified_error / g_supnorm)

  [[nodiscard]] double margin() const { return bound_used - ratio; }
};

/// ||g(T)|| against the certified sup of g on the distinguished boundary.
/// Throws PreconditionError when a member of the tuple is not in QA_r.
[[nodiscard]] RatioReport spectral_ratio(const OperatorTuple& t, const LaurentPoly& g,
                                         const AnnulusParams& params,
                                         std::optional<BoundKind> kind = std::nullopt,
                                         int samples_per_circle = 0);

struct BoundSample {
  OperatorTuple tuple;
  LaurentPoly poly;
};

struct BoundSummary {
  BoundKind kind = BoundKind::annulus;
  std::vector<RatioReport> rows;
  double max_ratio = 0.0;  // lower-bound witness only
  std::size_t argmax = 0;
  std::size_t pass_count = 0;
  bool all_pass = false;
};

/// Ratios for every sample against the bound of `kind`. The fold is
/// independent of the worker count. Throws InputError when a tuple's shape
/// does not fit `kind`.
[[nodiscard]] BoundSummary check_bound(const std::vector<BoundSample>& samples,
                                       const AnnulusParams& params, BoundKind kind,
                                       unsigned workers = 1);

/// Route through the explicit dilation J of T (padded so ||J|| = ||J^-1|| = r)
/// and the unitary U = r (1 + r^2)^-1 (J + J^-*).
struct DilationRouteReport {
  double operator_norm = 0.0;      // ||g(T)||
  double lifted_norm = 0.0;        // ||g(J)||
  double compression_error = 0.0;  // ||P g(J) P - g(T)||
  double unitary_defect = 0.0;     // of U
  double identity_residual = 0.0;  // ||U g(J) U* - four-term expansion||
  std::vector<double> terms;       // sup on rT of a0 + z g+, a0 + w g-, g+, g-
  std::vector<double> term_bounds; // Cauchy-estimate bounds for the four terms
  double estimate = 0.0;           // r/(1+r^2) (r t1 + r t2 + t3 + t4), certified upper value
  SupNorm g_sup;
  bool pass = false;
};

/// T single operator in QA_r, g one-variable.
[[nodiscard]] DilationRouteReport dilation_route(const ComplexMatrix& T, const LaurentPoly& g,
                                                 const AnnulusParams& params,
                                                 const Tolerance& tol = {});

}  // namespace qasl
