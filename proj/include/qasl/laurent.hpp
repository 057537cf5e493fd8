#pragma once

// Multivariable Laurent polynomials and their evaluation on points and on
// commuting operator tuples.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qasl/linalg.hpp"
#include "qasl/qannulus.hpp"

namespace qasl {

using Exponent = std::vector<int>;

/// Finite map from exponent vectors to nonzero complex coefficients.
class LaurentPoly {
 public:
  /// Throws InputError unless n_vars >= 1.
  explicit LaurentPoly(int n_vars);

  static LaurentPoly constant(int n_vars, Complex c);
  static LaurentPoly monomial(const Exponent& exp, Complex c = 1.0);

  [[nodiscard]] int n_vars() const { return n_vars_; }
  [[nodiscard]] const std::map<Exponent, Complex>& coeffs() const { return coeffs_; }
  [[nodiscard]] std::size_t size() const { return coeffs_.size(); }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of z^exp (zero when absent).
  [[nodiscard]] Complex coeff(const Exponent& exp) const;

  /// Adds c to the coefficient of z^exp; exact zeros are removed.
  void add(const Exponent& exp, Complex c);
  /// Overwrites the coefficient of z^exp.
  void set(const Exponent& exp, Complex c);

  /// max over the support of sum_i |nu_i|; 0 for the zero polynomial.
  [[nodiscard]] int max_abs_degree() const;
  /// Per-variable exponent range [lo, hi] over the support.
  [[nodiscard]] std::vector<std::pair<int, int>> exponent_window() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator*=(Complex c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator*(Complex c, LaurentPoly a) { return a *= c; }

 private:
  void check_exponent(const Exponent& exp) const;

  int n_vars_;
  std::map<Exponent, Complex> coeffs_;
};

/// sum a_nu prod z_i^nu_i. Throws DomainError on a zero coordinate.
[[nodiscard]] Complex eval_point(const LaurentPoly& g, const std::vector<Complex>& z);

enum class CommutationMode { commuting, doubly_commuting };

[[nodiscard]] std::string to_string(CommutationMode mode);

/// Commuting invertible matrices (T_1, ..., T_n) of a common dimension.
struct OperatorTuple {
  std::vector<ComplexMatrix> ops;
  CommutationMode mode = CommutationMode::commuting;

  [[nodiscard]] std::size_t size() const { return ops.size(); }
  [[nodiscard]] Eigen::Index dim() const { return ops.empty() ? 0 : ops.front().rows(); }
};

/// max_{i<j} ||T_i T_j - T_j T_i|| / (||T_i|| ||T_j||).
[[nodiscard]] double commutator_defect(const OperatorTuple& t);
/// max_{i!=j} ||T_i T_j* - T_j* T_i|| / (||T_i|| ||T_j||).
[[nodiscard]] double adjoint_commutator_defect(const OperatorTuple& t);

/// Throws InputError on shape problems and PreconditionError when the tuple
/// does not commute (or doubly commute, per its mode) within tol.abs.
void check_tuple(const OperatorTuple& t, const Tolerance& tol = {});

/// g(T_1, ..., T_n), negative powers through one inverse per factor.
/// Throws PreconditionError on commutation failure, DomainError on a singular factor.
[[nodiscard]] ComplexMatrix eval_operators(const LaurentPoly& g, const OperatorTuple& t,
                                           const Tolerance& tol = {});

/// Values of g on the N^n grid of the unit polycircle, theta_j = 2 pi j / N,
/// row-major with variable 1 slowest.
[[nodiscard]] std::vector<Complex> sample_unit_grid(const LaurentPoly& g, int N);

struct CoefficientExtraction {
  LaurentPoly poly;
  /// max over the grid of |sample - poly|, i.e. what the window failed to capture.
  double truncation_residual = 0.0;
};

/// Discrete Fourier quadrature of the Cauchy coefficient integral over the
/// window [lo_i, hi_i] in each variable. Throws InputError when a window is
/// wider than N (aliasing) or the sample count is not N^n.
[[nodiscard]] CoefficientExtraction coefficients_from_samples(
    const std::vector<Complex>& samples, int N, const std::vector<std::pair<int, int>>& window);

/// Cauchy estimate: every |a_nu| <= supnorm / r^{sum |nu_i|} + 1e-10.
[[nodiscard]] bool cauchy_check(const LaurentPoly& g, const AnnulusParams& params, double supnorm);

struct UnivariateSplit {
  Complex a0;
  LaurentPoly g_plus;   // b_k = a_{k+1}
  LaurentPoly g_minus;  // c_k = a_{-(k+1)}
};

/// g(z) = a0 + z g+(z) + (1/z) g-(1/z). Throws InputError unless n_vars = 1.
[[nodiscard]] UnivariateSplit split_univariate(const LaurentPoly& g);

/// mu: {1..n} -> {+1, -1}.
struct SignPattern {
  std::vector<int> mu;
  [[nodiscard]] int t() const;
  [[nodiscard]] std::string label() const;  // e.g. "+-"
};

struct DecompositionPart {
  SignPattern pattern;
  LaurentPoly part;  // nonnegative exponents
};

/// All 2^n parts in canonical order (variable 1 most significant, + before -),
/// so that for n = 2 the parts are (+,+), (+,-), (-,+), (-,-).
/// Exponent 0 routes to +.
[[nodiscard]] std::vector<DecompositionPart> decompose_2n(const LaurentPoly& g);

/// sum_mu g_mu(z_1^mu(1), ..., z_n^mu(n)).
[[nodiscard]] Complex eval_decomposition(const std::vector<DecompositionPart>& parts,
                                         const std::vector<Complex>& z);

/// (r^2/(r^2-1))^t ((2r^2-1)/(r^2-1))^{n-t}. Throws InputError unless 0 <= t <= n.
[[nodiscard]] double mu_estimate_bound(const AnnulusParams& params, int n, int t);

struct TwoVariableBounds {
  double b1, b2, b3, b4;
};

/// Closed-form estimates for the four parts of a two-variable decomposition:
/// b1 = 1 + 2/sqrt(r^4-1) + 1/(r^2-1)^2,
/// b2 = b3 = 1 + (1+r^2)/sqrt(r^4-1) + r^2/(r^2-1)^2,
/// b4 = 1 + 2r^2/sqrt(r^4-1) + (r^2/(r^2-1))^2.
[[nodiscard]] TwoVariableBounds pair_part_bounds(const AnnulusParams& params);

}  // namespace qasl
