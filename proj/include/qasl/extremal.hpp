#pragma once

// Finite cyclic models of the periodic weighted bilateral shift and the
// lower-bound ratio scan built on them.

#include <vector>

#include "qasl/bounds.hpp"
#include "qasl/laurent.hpp"
#include "qasl/qannulus.hpp"

namespace qasl {

/// S e_k = w_k e_{k+1 mod 2p} with w_k = r for k < p and 1/r otherwise.
struct ShiftModel {
  int p = 0;
  double r = 0.0;
  std::vector<double> weights;
  ComplexMatrix S;
  ComplexMatrix S_inv;  // exact: S^-1 e_{k+1} = e_k / w_k

  [[nodiscard]] Eigen::Index dim() const { return S.rows(); }
};

/// Throws InputError for p < 1 and ResourceError when 2p exceeds cap.
[[nodiscard]] ShiftModel cyclic_shift_model(int p, const AnnulusParams& params,
                                            std::size_t cap = kDefaultDimensionCap);

/// xi_0 = 1, xi_{k+1} = w_k xi_k over one period.
[[nodiscard]] std::vector<double> xi_profile(const ShiftModel& model);

/// r^-m (z^m + z^-m). Throws InputError for m < 1.
[[nodiscard]] LaurentPoly test_function_gm(int m, const AnnulusParams& params);

/// 1 + r^-2m, the sup of g_m on the closed annulus.
[[nodiscard]] double gm_supnorm(int m, const AnnulusParams& params);

/// g_m(S) from the model's exact inverse.
[[nodiscard]] ComplexMatrix gm_of_shift(const ShiftModel& model, int m, const AnnulusParams& params);

struct TensorCheck {
  int p = 0;
  int m = 0;
  double norm = 0.0;         // ||g_m(S)||
  double tensor_norm = 0.0;  // ||g_m(S) (x) g_m(S)||
  double rel_error = 0.0;    // |tensor_norm - norm^2| / norm^2
};

[[nodiscard]] TensorCheck tensor_norm_check(int p, int m, const AnnulusParams& params);

struct ScanRow {
  int p = 0;
  int m = 0;
  int n = 1;
  double ratio = 0.0;      // (||g_m(S)|| / (1 + r^-2m))^n
  double reference = 0.0;  // (2 r^m / (r^m + r^-m))^n
  double upper = 0.0;      // annulus bound (n = 1) or dc_poly(n)
  bool within_upper = false;
};

struct ScanTable {
  std::vector<ScanRow> rows;  // (p, m) lexicographic
  TensorCheck tensor;         // at the smallest scanned p and m
  bool all_within_upper = false;
};

/// Throws PreconditionError when max(m_list) > min(p_list), InputError on
/// empty lists, n < 1 or m < 1.
[[nodiscard]] ScanTable lower_bound_scan(const AnnulusParams& params, const std::vector<int>& p_list,
                                         const std::vector<int>& m_list, int n);

}  // namespace qasl
