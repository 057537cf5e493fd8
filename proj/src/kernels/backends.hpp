#pragma once

// Raw backend signatures. Kept free of Eigen and of any inline code shared
// with other translation units, because the SIMD variants are compiled with
// ISA flags the rest of the library does not use.

#include <cstddef>

namespace qasl::kernels::detail {

struct RawRowMax {
  double value_sq;
  std::size_t row;
  std::size_t col;
};

using RowsTimesBasisFn = RawRowMax (*)(const double* coef_re, const double* coef_im,
                                       std::size_t rows, std::size_t terms,
                                       const double* basis_re, const double* basis_im,
                                       std::size_t cols);

RawRowMax rows_times_basis_max_scalar(const double* coef_re, const double* coef_im,
                                      std::size_t rows, std::size_t terms,
                                      const double* basis_re, const double* basis_im,
                                      std::size_t cols);

#if defined(QASL_BUILD_AVX2)
RawRowMax rows_times_basis_max_avx2(const double* coef_re, const double* coef_im,
                                    std::size_t rows, std::size_t terms,
                                    const double* basis_re, const double* basis_im,
                                    std::size_t cols);
#endif

#if defined(QASL_BUILD_NEON)
RawRowMax rows_times_basis_max_neon(const double* coef_re, const double* coef_im,
                                    std::size_t rows, std::size_t terms,
                                    const double* basis_re, const double* basis_im,
                                    std::size_t cols);
#endif

}  // namespace qasl::kernels::detail
