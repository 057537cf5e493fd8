#include "qasl/supnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qasl/error.hpp"
#include "qasl/kernels.hpp"

namespace qasl {

namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kGoldenIterations = 60;
constexpr int kGoldenSweeps = 3;

// rho^e e^{i e theta_j} with the angle reduced exactly as (e j mod N).
Complex basis_entry(double rho, int e, int j, int N) {
  const long long m = ((static_cast<long long>(e) * j) % N + N) % N;
  return std::polar(std::pow(rho, e), kTwoPi * static_cast<double>(m) / N);
}

double modulus_at(const LaurentPoly& g, const std::vector<double>& radii,
                  const std::vector<double>& angles) {
  std::vector<Complex> z(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) z[i] = std::polar(radii[i], angles[i]);
  return std::abs(eval_point(g, z));
}

// Golden-section maximization of |g| along each angle in turn, within one grid
// cell on either side of the starting point.
double polish(const LaurentPoly& g, const std::vector<double>& radii, std::vector<double>& angles,
              double start_value, int N) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double h = kTwoPi / N;
  double best = start_value;
  for (int sweep = 0; sweep < kGoldenSweeps; ++sweep) {
    for (std::size_t i = 0; i < angles.size(); ++i) {
      std::vector<double> trial = angles;
      const auto f = [&](double t) {
        trial[i] = t;
        return modulus_at(g, radii, trial);
      };
      double a = angles[i] - h;
      double b = angles[i] + h;
      double c = b - invphi * (b - a);
      double d = a + invphi * (b - a);
      double fc = f(c);
      double fd = f(d);
      for (int it = 0; it < kGoldenIterations; ++it) {
        if (fc > fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - invphi * (b - a);
          fc = f(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + invphi * (b - a);
          fd = f(d);
        }
      }
      const double t = fc > fd ? c : d;
      const double v = std::max(fc, fd);
      if (v > best) {
        best = v;
        angles[i] = t;
      }
    }
  }
  return best;
}

}  // namespace

int BoundarySpec::sample_floor(const LaurentPoly& g) { return std::max(256, 32 * g.max_abs_degree()); }

BoundarySpec BoundarySpec::for_poly(const LaurentPoly& g, BoundaryKind kind, double r) {
  return BoundarySpec{kind, r, sample_floor(g)};
}

SupNorm sup_on_torus(const LaurentPoly& g, const std::vector<double>& radii, int N) {
  const int n = g.n_vars();
  if (static_cast<int>(radii.size()) != n) throw InputError("sup_on_torus: radii arity mismatch");
  for (double rho : radii) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw InputError("sup_on_torus: radii must be positive");
  }
  if (N < 8) throw InputError("sup_on_torus: need at least 8 samples per circle");

  SupNorm out;
  out.arg_radii = radii;
  out.arg_angles.assign(static_cast<std::size_t>(n), 0.0);
  if (g.is_zero()) return out;

  // Angular-derivative bound.
  double D = 0.0;
  for (const auto& [exp, c] : g.coeffs()) {
    int s = 0;
    double mod = std::abs(c);
    for (int i = 0; i < n; ++i) {
      s += std::abs(exp[static_cast<std::size_t>(i)]);
      mod *= std::pow(radii[static_cast<std::size_t>(i)], exp[static_cast<std::size_t>(i)]);
    }
    D += mod * s;
  }
  out.certified_error = D * std::numbers::pi / N;

  const auto window = g.exponent_window();
  std::vector<std::size_t> K(static_cast<std::size_t>(n));
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    K[static_cast<std::size_t>(i)] =
        static_cast<std::size_t>(window[static_cast<std::size_t>(i)].second - window[static_cast<std::size_t>(i)].first + 1);
    total *= K[static_cast<std::size_t>(i)];
  }

  // Dense coefficient tensor, row-major with variable 1 slowest.
  std::vector<Complex> data(total, Complex(0.0));
  for (const auto& [exp, c] : g.coeffs()) {
    std::size_t flat = 0;
    for (int i = 0; i < n; ++i) {
      flat = flat * K[static_cast<std::size_t>(i)] +
             static_cast<std::size_t>(exp[static_cast<std::size_t>(i)] - window[static_cast<std::size_t>(i)].first);
    }
    data[flat] = c;
  }

  // Contract variables 1..n-1 against their N x K_i basis by GEMM.
  std::size_t prefix = 1;
  for (int i = 0; i + 1 < n; ++i) {
    const auto Ki = K[static_cast<std::size_t>(i)];
    const int lo = window[static_cast<std::size_t>(i)].first;
    std::size_t rest = 1;
    for (int l = i + 1; l < n; ++l) rest *= K[static_cast<std::size_t>(l)];
    RowMajorMatrix Bt(N, static_cast<Eigen::Index>(Ki));
    for (int j = 0; j < N; ++j) {
      for (std::size_t k = 0; k < Ki; ++k) {
        Bt(j, static_cast<Eigen::Index>(k)) =
            basis_entry(radii[static_cast<std::size_t>(i)], lo + static_cast<int>(k), j, N);
      }
    }
    std::vector<Complex> next(prefix * static_cast<std::size_t>(N) * rest);
    for (std::size_t p = 0; p < prefix; ++p) {
      Eigen::Map<const RowMajorMatrix> in(&data[p * Ki * rest], static_cast<Eigen::Index>(Ki),
                                          static_cast<Eigen::Index>(rest));
      Eigen::Map<RowMajorMatrix> dst(&next[p * static_cast<std::size_t>(N) * rest], N,
                                     static_cast<Eigen::Index>(rest));
      dst.noalias() = Bt * in;
    }
    data.swap(next);
    prefix *= static_cast<std::size_t>(N);
  }

  // The last variable runs through the fused multiply-and-max kernel.
  const auto Kl = K.back();
  const int lo_last = window.back().first;
  kernels::SplitMatrix rows(prefix, Kl);
  for (std::size_t f = 0; f < prefix * Kl; ++f) {
    rows.re[f] = data[f].real();
    rows.im[f] = data[f].imag();
  }
  kernels::SplitMatrix basis(Kl, static_cast<std::size_t>(N));
  for (std::size_t k = 0; k < Kl; ++k) {
    for (int j = 0; j < N; ++j) {
      const Complex b = basis_entry(radii.back(), lo_last + static_cast<int>(k), j, N);
      basis.re[k * static_cast<std::size_t>(N) + static_cast<std::size_t>(j)] = b.real();
      basis.im[k * static_cast<std::size_t>(N) + static_cast<std::size_t>(j)] = b.imag();
    }
  }
  const auto best = kernels::rows_times_basis_max(rows, basis);

  std::size_t row = best.row;
  for (int i = n - 2; i >= 0; --i) {
    out.arg_angles[static_cast<std::size_t>(i)] =
        kTwoPi * static_cast<double>(row % static_cast<std::size_t>(N)) / N;
    row /= static_cast<std::size_t>(N);
  }
  out.arg_angles.back() = kTwoPi * static_cast<double>(best.col) / N;

  const double grid_value = std::sqrt(std::max(0.0, best.value_sq));
  out.value = polish(g, radii, out.arg_angles, grid_value, N);
  return out;
}

SupNorm sup_norm(const LaurentPoly& g, const BoundarySpec& spec) {
  const AnnulusParams params(spec.r);
  const int floor = BoundarySpec::sample_floor(g);
  if (spec.samples_per_circle < floor) {
    throw InputError("sup_norm: " + std::to_string(spec.samples_per_circle) +
                     " samples per circle is below the floor " + std::to_string(floor));
  }
  const int n = g.n_vars();
  const int N = spec.samples_per_circle;
  if (spec.kind == BoundaryKind::polycircle_r) {
    return sup_on_torus(g, std::vector<double>(static_cast<std::size_t>(n), params.r()), N);
  }
  if (n > 16) throw ResourceError("sup_norm: too many variables for the distinguished boundary");

  SupNorm best;
  bool first = true;
  double worst_error = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<double> radii(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      radii[static_cast<std::size_t>(i)] = ((mask >> (n - 1 - i)) & 1U) ? 1.0 / params.r() : params.r();
    }
    auto s = sup_on_torus(g, radii, N);
    worst_error = std::max(worst_error, s.certified_error);
    if (first || s.value > best.value) {
      best = std::move(s);
      first = false;
    }
  }
  best.certified_error = worst_error;
  return best;
}

DecompositionReport verify_decomposition_estimates(const LaurentPoly& g, const AnnulusParams& params,
                                                   EstimateKind kind, int samples_per_circle) {
  const int n = g.n_vars();
  if (kind == EstimateKind::pair_parts && n != 2) {
    throw InputError("verify_decomposition_estimates: the four-part estimate needs two variables");
  }
  const int N = samples_per_circle > 0 ? samples_per_circle : BoundarySpec::sample_floor(g);

  DecompositionReport rep;
  rep.kind = kind;
  rep.g_sup = sup_norm(g, BoundarySpec{BoundaryKind::polyannulus_distinguished, params.r(), N});
  rep.parts = decompose_2n(g);

  double pair_bounds[4] = {0, 0, 0, 0};
  if (kind == EstimateKind::pair_parts) {
    const auto b = pair_part_bounds(params);
    pair_bounds[0] = b.b1;
    pair_bounds[1] = b.b2;
    pair_bounds[2] = b.b3;
    pair_bounds[3] = b.b4;
  }

  rep.all_pass = true;
  for (std::size_t idx = 0; idx < rep.parts.size(); ++idx) {
    const auto& part = rep.parts[idx];
    PartEstimate e;
    e.pattern = part.pattern;
    const auto s = sup_on_torus(part.part, std::vector<double>(static_cast<std::size_t>(n), params.r()), N);
    e.part_sup = s.value;
    e.part_error = s.certified_error;
    e.bound = kind == EstimateKind::pair_parts ? pair_bounds[idx]
                                               : mu_estimate_bound(params, n, part.pattern.t());
    if (e.part_sup == 0.0) {
      e.ratio = 0.0;
      e.pass = true;
    } else if (rep.g_sup.value == 0.0) {
      e.ratio = std::numeric_limits<double>::infinity();
      e.pass = false;
    } else {
      e.ratio = e.part_sup / rep.g_sup.value;
      e.pass = e.ratio <= e.bound * (1.0 + s.relative_error() + rep.g_sup.relative_error());
    }
    rep.all_pass = rep.all_pass && e.pass;
    rep.estimates.push_back(std::move(e));
  }
  return rep;
}

}  // namespace qasl
