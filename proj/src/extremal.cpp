#include "qasl/extremal.hpp"

#include <algorithm>
#include <cmath>

#include "qasl/error.hpp"

namespace qasl {

ShiftModel cyclic_shift_model(int p, const AnnulusParams& params, std::size_t cap) {
  if (p < 1) throw InputError("cyclic_shift_model: p must be >= 1");
  const auto dim = static_cast<std::size_t>(2) * static_cast<std::size_t>(p);
  if (dim > cap) {
    throw ResourceError("cyclic_shift_model: dimension " + std::to_string(dim) + " exceeds cap " +
                        std::to_string(cap));
  }
  ShiftModel m;
  m.p = p;
  m.r = params.r();
  const auto d = static_cast<Eigen::Index>(dim);
  m.S = ComplexMatrix::Zero(d, d);
  m.S_inv = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double w = k < p ? params.r() : 1.0 / params.r();
    m.weights.push_back(w);
    const Eigen::Index next = (k + 1) % d;
    m.S(next, k) = w;
    m.S_inv(k, next) = 1.0 / w;
  }
  return m;
}

std::vector<double> xi_profile(const ShiftModel& model) {
  std::vector<double> xi{1.0};
  for (std::size_t k = 0; k + 1 < model.weights.size(); ++k) xi.push_back(xi.back() * model.weights[k]);
  return xi;
}

LaurentPoly test_function_gm(int m, const AnnulusParams& params) {
  if (m < 1) throw InputError("test_function_gm: m must be >= 1");
  const double s = std::pow(params.r(), -m);
  LaurentPoly g(1);
  g.add({m}, s);
  g.add({-m}, s);
  return g;
}

double gm_supnorm(int m, const AnnulusParams& params) { return 1.0 + std::pow(params.r(), -2 * m); }

ComplexMatrix gm_of_shift(const ShiftModel& model, int m, const AnnulusParams& params) {
  return std::pow(params.r(), -m) * (integer_power(model.S, model.S_inv, m) +
                                     integer_power(model.S, model.S_inv, -m));
}

TensorCheck tensor_norm_check(int p, int m, const AnnulusParams& params) {
  const auto model = cyclic_shift_model(p, params);
  const ComplexMatrix G = gm_of_shift(model, m, params);
  TensorCheck t;
  t.p = p;
  t.m = m;
  t.norm = op_norm(G);
  t.tensor_norm = op_norm(kron(G, G));
  const double sq = t.norm * t.norm;
  t.rel_error = sq > 0.0 ? std::abs(t.tensor_norm - sq) / sq : t.tensor_norm;
  return t;
}

ScanTable lower_bound_scan(const AnnulusParams& params, const std::vector<int>& p_list,
                           const std::vector<int>& m_list, int n) {
  if (p_list.empty() || m_list.empty()) throw InputError("lower_bound_scan: empty p or m list");
  if (n < 1) throw InputError("lower_bound_scan: n must be >= 1");
  const int p_min = *std::min_element(p_list.begin(), p_list.end());
  const int m_min = *std::min_element(m_list.begin(), m_list.end());
  const int m_max = *std::max_element(m_list.begin(), m_list.end());
  if (m_min < 1) throw InputError("lower_bound_scan: m must be >= 1");
  if (p_min < 1) throw InputError("lower_bound_scan: p must be >= 1");
  if (m_max > p_min) {
    throw PreconditionError("lower_bound_scan: requires max m <= min p, got m=" + std::to_string(m_max) +
                            " p=" + std::to_string(p_min));
  }

  std::vector<int> ps = p_list;
  std::vector<int> ms = m_list;
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

  const double upper = n == 1 ? annulus_bound(params) : dc_poly_bound(params, n);
  ScanTable table;
  table.all_within_upper = true;
  for (int p : ps) {
    const auto model = cyclic_shift_model(p, params);
    for (int m : ms) {
      ScanRow row;
      row.p = p;
      row.m = m;
      row.n = n;
      const double single = op_norm(gm_of_shift(model, m, params)) / gm_supnorm(m, params);
      const double rm = std::pow(params.r(), m);
      row.ratio = std::pow(single, n);
      row.reference = std::pow(2.0 * rm / (rm + 1.0 / rm), n);
      row.upper = upper;
      row.within_upper = row.ratio <= upper * (1.0 + 1e-10);
      table.all_within_upper = table.all_within_upper && row.within_upper;
      table.rows.push_back(row);
    }
  }
  table.tensor = tensor_norm_check(std::min(ps.front(), std::max(8, ms.front())), ms.front(), params);
  return table;
}

}  // namespace qasl
