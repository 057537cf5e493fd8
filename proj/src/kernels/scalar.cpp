#include "backends.hpp"

namespace qasl::kernels::detail {

RawRowMax rows_times_basis_max_scalar(const double* coef_re, const double* coef_im,
                                      std::size_t rows, std::size_t terms,
                                      const double* basis_re, const double* basis_im,
                                      std::size_t cols) {
  RawRowMax best{-1.0, 0, 0};
  for (std::size_t r = 0; r < rows; ++r) {
    const double* cr = coef_re + r * terms;
    const double* ci = coef_im + r * terms;
    for (std::size_t j = 0; j < cols; ++j) {
      double acc_re = 0.0;
      double acc_im = 0.0;
      for (std::size_t k = 0; k < terms; ++k) {
        const double er = basis_re[k * cols + j];
        const double ei = basis_im[k * cols + j];
        acc_re += cr[k] * er - ci[k] * ei;
        acc_im += cr[k] * ei + ci[k] * er;
      }
      const double m = acc_re * acc_re + acc_im * acc_im;
      if (m > best.value_sq) best = {m, r, j};
    }
  }
  return best;
}

}  // namespace qasl::kernels::detail
