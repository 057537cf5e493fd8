#include "qasl/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qasl/error.hpp"

namespace qasl {

LaurentPoly::LaurentPoly(int n_vars) : n_vars_(n_vars) {
  if (n_vars < 1) throw InputError("LaurentPoly: n_vars must be >= 1");
}

LaurentPoly LaurentPoly::constant(int n_vars, Complex c) {
  LaurentPoly g(n_vars);
  g.add(Exponent(static_cast<std::size_t>(n_vars), 0), c);
  return g;
}

LaurentPoly LaurentPoly::monomial(const Exponent& exp, Complex c) {
  LaurentPoly g(static_cast<int>(exp.size()));
  g.add(exp, c);
  return g;
}

void LaurentPoly::check_exponent(const Exponent& exp) const {
  if (static_cast<int>(exp.size()) != n_vars_) {
    throw InputError("LaurentPoly: exponent arity " + std::to_string(exp.size()) +
                     " does not match n_vars " + std::to_string(n_vars_));
  }
}

Complex LaurentPoly::coeff(const Exponent& exp) const {
  check_exponent(exp);
  const auto it = coeffs_.find(exp);
  return it == coeffs_.end() ? Complex(0.0) : it->second;
}

void LaurentPoly::add(const Exponent& exp, Complex c) {
  check_exponent(exp);
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw InputError("LaurentPoly: non-finite coefficient");
  }
  auto [it, inserted] = coeffs_.try_emplace(exp, c);
  if (!inserted) it->second += c;
  if (it->second == Complex(0.0)) coeffs_.erase(it);
}

void LaurentPoly::set(const Exponent& exp, Complex c) {
  check_exponent(exp);
  coeffs_.erase(exp);
  add(exp, c);
}

int LaurentPoly::max_abs_degree() const {
  int d = 0;
  for (const auto& [exp, c] : coeffs_) {
    int s = 0;
    for (int e : exp) s += std::abs(e);
    d = std::max(d, s);
  }
  return d;
}

std::vector<std::pair<int, int>> LaurentPoly::exponent_window() const {
  std::vector<std::pair<int, int>> w(static_cast<std::size_t>(n_vars_), {0, 0});
  bool first = true;
  for (const auto& [exp, c] : coeffs_) {
    for (std::size_t i = 0; i < exp.size(); ++i) {
      if (first) {
        w[i] = {exp[i], exp[i]};
      } else {
        w[i].first = std::min(w[i].first, exp[i]);
        w[i].second = std::max(w[i].second, exp[i]);
      }
    }
    first = false;
  }
  return w;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  if (other.n_vars_ != n_vars_) throw InputError("LaurentPoly: adding polynomials of different arity");
  for (const auto& [exp, c] : other.coeffs_) add(exp, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(Complex c) {
  if (c == Complex(0.0)) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [exp, a] : coeffs_) a *= c;
  return *this;
}

Complex eval_point(const LaurentPoly& g, const std::vector<Complex>& z) {
  if (static_cast<int>(z.size()) != g.n_vars()) throw InputError("eval_point: arity mismatch");
  for (const auto& zi : z) {
    if (zi == Complex(0.0)) throw DomainError("eval_point: zero coordinate");
  }
  Complex sum = 0.0;
  for (const auto& [exp, c] : g.coeffs()) {
    Complex term = c;
    for (std::size_t i = 0; i < exp.size(); ++i) {
      if (exp[i] != 0) term *= std::pow(z[i], exp[i]);
    }
    sum += term;
  }
  return sum;
}

std::string to_string(CommutationMode mode) {
  return mode == CommutationMode::commuting ? "commuting" : "doubly_commuting";
}

namespace {

double scaled_commutator(const ComplexMatrix& X, const ComplexMatrix& Y, double nx, double ny) {
  const double scale = nx * ny;
  const double d = op_norm(ComplexMatrix(X * Y - Y * X));
  return scale > 0.0 ? d / scale : d;
}

}  // namespace

double commutator_defect(const OperatorTuple& t) {
  std::vector<double> norms;
  for (const auto& T : t.ops) norms.push_back(op_norm(T));
  double d = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      d = std::max(d, scaled_commutator(t.ops[i], t.ops[j], norms[i], norms[j]));
    }
  }
  return d;
}

double adjoint_commutator_defect(const OperatorTuple& t) {
  std::vector<double> norms;
  for (const auto& T : t.ops) norms.push_back(op_norm(T));
  double d = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (i == j) continue;
      d = std::max(d, scaled_commutator(t.ops[i], t.ops[j].adjoint(), norms[i], norms[j]));
    }
  }
  return d;
}

void check_tuple(const OperatorTuple& t, const Tolerance& tol) {
  if (t.ops.empty()) throw InputError("operator tuple is empty");
  for (const auto& T : t.ops) {
    require_square_finite(T, "operator tuple member");
    if (T.rows() != t.dim()) throw InputError("operator tuple members differ in dimension");
  }
  const double c = commutator_defect(t);
  if (c > tol.abs) {
    throw PreconditionError("operator tuple does not commute (relative commutator " +
                            std::to_string(c) + ")");
  }
  if (t.mode == CommutationMode::doubly_commuting) {
    const double a = adjoint_commutator_defect(t);
    if (a > tol.abs) {
      throw PreconditionError("operator tuple is not doubly commuting (relative commutator " +
                              std::to_string(a) + ")");
    }
  }
}

ComplexMatrix eval_operators(const LaurentPoly& g, const OperatorTuple& t, const Tolerance& tol) {
  if (static_cast<int>(t.size()) != g.n_vars()) {
    throw InputError("eval_operators: tuple length does not match n_vars");
  }
  check_tuple(t, tol);
  const auto k = t.dim();
  const auto window = g.exponent_window();

  // powers[i][e - lo_i] = T_i^e over the exponent window of variable i.
  std::vector<std::vector<ComplexMatrix>> powers(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto [lo, hi] = window[i];
    const ComplexMatrix& T = t.ops[i];
    ComplexMatrix T_inv;
    if (lo < 0) T_inv = inverse(T, tol);
    auto& row = powers[i];
    row.assign(static_cast<std::size_t>(hi - lo + 1), ComplexMatrix());
    const auto at = [&](int e) -> ComplexMatrix& { return row[static_cast<std::size_t>(e - lo)]; };
    const int start = std::clamp(0, lo, hi);
    at(start) = integer_power(T, T_inv, start);
    for (int e = start + 1; e <= hi; ++e) at(e) = at(e - 1) * T;
    for (int e = start - 1; e >= lo; --e) at(e) = at(e + 1) * T_inv;
  }

  ComplexMatrix out = ComplexMatrix::Zero(k, k);
  for (const auto& [exp, c] : g.coeffs()) {
    ComplexMatrix term = powers[0][static_cast<std::size_t>(exp[0] - window[0].first)];
    for (std::size_t i = 1; i < exp.size(); ++i) {
      term = term * powers[i][static_cast<std::size_t>(exp[i] - window[i].first)];
    }
    out += c * term;
  }
  return out;
}

std::vector<Complex> sample_unit_grid(const LaurentPoly& g, int N) {
  if (N < 1) throw InputError("sample_unit_grid: N must be positive");
  const int n = g.n_vars();
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(N);
  std::vector<Complex> out(total);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int i = n - 1; i >= 0; --i) {
      const auto j = static_cast<double>(rest % static_cast<std::size_t>(N));
      rest /= static_cast<std::size_t>(N);
      z[static_cast<std::size_t>(i)] = std::polar(1.0, 2.0 * std::numbers::pi * j / N);
    }
    out[flat] = eval_point(g, z);
  }
  return out;
}

CoefficientExtraction coefficients_from_samples(const std::vector<Complex>& samples, int N,
                                                const std::vector<std::pair<int, int>>& window) {
  const int n = static_cast<int>(window.size());
  if (n < 1) throw InputError("coefficients_from_samples: empty window");
  if (N < 1) throw InputError("coefficients_from_samples: N must be positive");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(N);
  if (samples.size() != total) {
    throw InputError("coefficients_from_samples: expected N^n = " + std::to_string(total) +
                     " samples, got " + std::to_string(samples.size()));
  }
  for (const auto& [lo, hi] : window) {
    if (hi < lo) throw InputError("coefficients_from_samples: empty exponent interval");
    if (hi - lo + 1 > N) {
      throw InputError("coefficients_from_samples: window width " + std::to_string(hi - lo + 1) +
                       " exceeds N = " + std::to_string(N) + " (aliasing)");
    }
  }

  // Separable transform: contract one variable at a time, shape (pre, N, post) -> (pre, K, post).
  const auto unit_root = [N](long long e) {
    const long long m = ((e % N) + N) % N;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / N);
  };
  std::vector<Complex> data = samples;
  std::vector<std::size_t> shape(static_cast<std::size_t>(n), static_cast<std::size_t>(N));
  for (int i = 0; i < n; ++i) {
    const auto [lo, hi] = window[static_cast<std::size_t>(i)];
    const auto K = static_cast<std::size_t>(hi - lo + 1);
    std::size_t pre = 1;
    std::size_t post = 1;
    for (int l = 0; l < i; ++l) pre *= shape[static_cast<std::size_t>(l)];
    for (int l = i + 1; l < n; ++l) post *= shape[static_cast<std::size_t>(l)];
    std::vector<Complex> next(pre * K * post, Complex(0.0));
    for (std::size_t k = 0; k < K; ++k) {
      const long long e = lo + static_cast<long long>(k);
      for (int j = 0; j < N; ++j) {
        const Complex w = unit_root(-e * j) / static_cast<double>(N);
        for (std::size_t a = 0; a < pre; ++a) {
          const Complex* src = &data[(a * static_cast<std::size_t>(N) + static_cast<std::size_t>(j)) * post];
          Complex* dst = &next[(a * K + k) * post];
          for (std::size_t b = 0; b < post; ++b) dst[b] += w * src[b];
        }
      }
    }
    data.swap(next);
    shape[static_cast<std::size_t>(i)] = K;
  }

  double scale = 0.0;
  for (const auto& s : samples) scale = std::max(scale, std::abs(s));
  const double prune = 1e-13 * scale;

  CoefficientExtraction out{LaurentPoly(n), 0.0};
  Exponent exp(static_cast<std::size_t>(n));
  for (std::size_t flat = 0; flat < data.size(); ++flat) {
    std::size_t rest = flat;
    for (int i = n - 1; i >= 0; --i) {
      const auto si = shape[static_cast<std::size_t>(i)];
      exp[static_cast<std::size_t>(i)] = window[static_cast<std::size_t>(i)].first + static_cast<int>(rest % si);
      rest /= si;
    }
    if (std::abs(data[flat]) > prune) out.poly.add(exp, data[flat]);
  }

  const auto recon = sample_unit_grid(out.poly, N);
  for (std::size_t f = 0; f < total; ++f) {
    out.truncation_residual = std::max(out.truncation_residual, std::abs(recon[f] - samples[f]));
  }
  return out;
}

bool cauchy_check(const LaurentPoly& g, const AnnulusParams& params, double supnorm) {
  for (const auto& [exp, c] : g.coeffs()) {
    int s = 0;
    for (int e : exp) s += std::abs(e);
    if (std::abs(c) > supnorm / std::pow(params.r(), s) + 1e-10) return false;
  }
  return true;
}

UnivariateSplit split_univariate(const LaurentPoly& g) {
  if (g.n_vars() != 1) throw InputError("split_univariate: requires a one-variable polynomial");
  UnivariateSplit out{0.0, LaurentPoly(1), LaurentPoly(1)};
  for (const auto& [exp, c] : g.coeffs()) {
    const int e = exp[0];
    if (e == 0) {
      out.a0 = c;
    } else if (e > 0) {
      out.g_plus.add({e - 1}, c);
    } else {
      out.g_minus.add({-e - 1}, c);
    }
  }
  return out;
}

int SignPattern::t() const {
  return static_cast<int>(std::count(mu.begin(), mu.end(), 1));
}

std::string SignPattern::label() const {
  std::string s;
  for (int m : mu) s += m > 0 ? '+' : '-';
  return s;
}

std::vector<DecompositionPart> decompose_2n(const LaurentPoly& g) {
  const int n = g.n_vars();
  if (n > 16) throw ResourceError("decompose_2n: too many variables");
  const std::size_t count = std::size_t{1} << n;
  std::vector<DecompositionPart> parts;
  parts.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    SignPattern p;
    for (int i = 0; i < n; ++i) {
      const bool minus = (idx >> (n - 1 - i)) & 1U;
      p.mu.push_back(minus ? -1 : 1);
    }
    parts.push_back({p, LaurentPoly(n)});
  }
  for (const auto& [exp, c] : g.coeffs()) {
    std::size_t idx = 0;
    Exponent abs_exp(exp.size());
    for (int i = 0; i < n; ++i) {
      const int e = exp[static_cast<std::size_t>(i)];
      if (e < 0) idx |= std::size_t{1} << (n - 1 - i);
      abs_exp[static_cast<std::size_t>(i)] = std::abs(e);
    }
    parts[idx].part.add(abs_exp, c);
  }
  return parts;
}

Complex eval_decomposition(const std::vector<DecompositionPart>& parts, const std::vector<Complex>& z) {
  Complex sum = 0.0;
  for (const auto& p : parts) {
    std::vector<Complex> w(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) w[i] = p.pattern.mu[i] > 0 ? z[i] : 1.0 / z[i];
    sum += eval_point(p.part, w);
  }
  return sum;
}

double mu_estimate_bound(const AnnulusParams& params, int n, int t) {
  if (n < 0 || t < 0 || t > n) {
    throw InputError("mu_estimate_bound: requires 0 <= t <= n, got n=" + std::to_string(n) +
                     " t=" + std::to_string(t));
  }
  const double r2 = params.r2();
  return std::pow(r2 / (r2 - 1.0), t) * std::pow((2.0 * r2 - 1.0) / (r2 - 1.0), n - t);
}

TwoVariableBounds pair_part_bounds(const AnnulusParams& params) {
  const double r2 = params.r2();
  const double root = std::sqrt(r2 * r2 - 1.0);
  const double q = r2 - 1.0;
  TwoVariableBounds b{};
  b.b1 = 1.0 + 2.0 / root + 1.0 / (q * q);
  b.b2 = 1.0 + (1.0 + r2) / root + r2 / (q * q);
  b.b3 = b.b2;
  b.b4 = 1.0 + 2.0 * r2 / root + (r2 / q) * (r2 / q);
  return b;
}

}  // namespace qasl
