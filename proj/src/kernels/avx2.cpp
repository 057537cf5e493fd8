#include <immintrin.h>

#include "backends.hpp"

namespace qasl::kernels::detail {

namespace {

struct Lane4 {
  __m256d best = _mm256_set1_pd(-1.0);
  __m256d index = _mm256_setzero_pd();

  void update(__m256d value, __m256d flat) {
    const __m256d gt = _mm256_cmp_pd(value, best, _CMP_GT_OQ);
    best = _mm256_blendv_pd(best, value, gt);
    index = _mm256_blendv_pd(index, flat, gt);
  }
};

inline void offer(RawRowMax& acc, double value, double flat, std::size_t cols) {
  const auto f = static_cast<std::size_t>(flat);
  const std::size_t acc_flat = acc.row * cols + acc.col;
  if (value > acc.value_sq || (value == acc.value_sq && acc.value_sq >= 0.0 && f < acc_flat)) {
    acc = {value, f / cols, f % cols};
  }
}

inline void drain(const Lane4& lanes, RawRowMax& acc, std::size_t cols) {
  alignas(32) double v[4];
  alignas(32) double ix[4];
  _mm256_store_pd(v, lanes.best);
  _mm256_store_pd(ix, lanes.index);
  for (int l = 0; l < 4; ++l) {
    if (v[l] >= 0.0) offer(acc, v[l], ix[l], cols);
  }
}

}  // namespace

RawRowMax rows_times_basis_max_avx2(const double* coef_re, const double* coef_im,
                                    std::size_t rows, std::size_t terms,
                                    const double* basis_re, const double* basis_im,
                                    std::size_t cols) {
  Lane4 lo;
  Lane4 hi;
  RawRowMax tail{-1.0, 0, 0};
  const __m256d lane_offset = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);

  for (std::size_t r = 0; r < rows; ++r) {
    const double* cr = coef_re + r * terms;
    const double* ci = coef_im + r * terms;
    const double row_base = static_cast<double>(r * cols);
    std::size_t j = 0;

    for (; j + 8 <= cols; j += 8) {
      __m256d ar0 = _mm256_setzero_pd();
      __m256d ai0 = _mm256_setzero_pd();
      __m256d ar1 = _mm256_setzero_pd();
      __m256d ai1 = _mm256_setzero_pd();
      for (std::size_t k = 0; k < terms; ++k) {
        const __m256d c_re = _mm256_broadcast_sd(cr + k);
        const __m256d c_im = _mm256_broadcast_sd(ci + k);
        const double* br = basis_re + k * cols + j;
        const double* bi = basis_im + k * cols + j;
        const __m256d er0 = _mm256_loadu_pd(br);
        const __m256d ei0 = _mm256_loadu_pd(bi);
        const __m256d er1 = _mm256_loadu_pd(br + 4);
        const __m256d ei1 = _mm256_loadu_pd(bi + 4);
        ar0 = _mm256_fnmadd_pd(c_im, ei0, _mm256_fmadd_pd(c_re, er0, ar0));
        ai0 = _mm256_fmadd_pd(c_im, er0, _mm256_fmadd_pd(c_re, ei0, ai0));
        ar1 = _mm256_fnmadd_pd(c_im, ei1, _mm256_fmadd_pd(c_re, er1, ar1));
        ai1 = _mm256_fmadd_pd(c_im, er1, _mm256_fmadd_pd(c_re, ei1, ai1));
      }
      const __m256d m0 = _mm256_fmadd_pd(ar0, ar0, _mm256_mul_pd(ai0, ai0));
      const __m256d m1 = _mm256_fmadd_pd(ar1, ar1, _mm256_mul_pd(ai1, ai1));
      const __m256d flat0 = _mm256_add_pd(_mm256_set1_pd(row_base + static_cast<double>(j)), lane_offset);
      const __m256d flat1 = _mm256_add_pd(flat0, _mm256_set1_pd(4.0));
      lo.update(m0, flat0);
      hi.update(m1, flat1);
    }

    for (; j + 4 <= cols; j += 4) {
      __m256d ar = _mm256_setzero_pd();
      __m256d ai = _mm256_setzero_pd();
      for (std::size_t k = 0; k < terms; ++k) {
        const __m256d c_re = _mm256_broadcast_sd(cr + k);
        const __m256d c_im = _mm256_broadcast_sd(ci + k);
        const __m256d er = _mm256_loadu_pd(basis_re + k * cols + j);
        const __m256d ei = _mm256_loadu_pd(basis_im + k * cols + j);
        ar = _mm256_fnmadd_pd(c_im, ei, _mm256_fmadd_pd(c_re, er, ar));
        ai = _mm256_fmadd_pd(c_im, er, _mm256_fmadd_pd(c_re, ei, ai));
      }
      const __m256d m = _mm256_fmadd_pd(ar, ar, _mm256_mul_pd(ai, ai));
      lo.update(m, _mm256_add_pd(_mm256_set1_pd(row_base + static_cast<double>(j)), lane_offset));
    }

    for (; j < cols; ++j) {
      double acc_re = 0.0;
      double acc_im = 0.0;
      for (std::size_t k = 0; k < terms; ++k) {
        const double er = basis_re[k * cols + j];
        const double ei = basis_im[k * cols + j];
        acc_re += cr[k] * er - ci[k] * ei;
        acc_im += cr[k] * ei + ci[k] * er;
      }
      const double m = acc_re * acc_re + acc_im * acc_im;
      if (m > tail.value_sq) tail = {m, r, j};
    }
  }

  RawRowMax result = tail;
  drain(lo, result, cols);
  drain(hi, result, cols);
  return result;
}

}  // namespace qasl::kernels::detail
