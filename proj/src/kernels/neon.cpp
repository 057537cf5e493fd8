#include <arm_neon.h>

#include "backends.hpp"

namespace qasl::kernels::detail {

namespace {

struct Lane2 {
  float64x2_t best = vdupq_n_f64(-1.0);
  float64x2_t index = vdupq_n_f64(0.0);

  void update(float64x2_t value, float64x2_t flat) {
    const uint64x2_t gt = vcgtq_f64(value, best);
    best = vbslq_f64(gt, value, best);
    index = vbslq_f64(gt, flat, index);
  }
};

inline void offer(RawRowMax& acc, double value, double flat, std::size_t cols) {
  const auto f = static_cast<std::size_t>(flat);
  const std::size_t acc_flat = acc.row * cols + acc.col;
  if (value > acc.value_sq || (value == acc.value_sq && f < acc_flat)) {
    acc = {value, f / cols, f % cols};
  }
}

inline void drain(const Lane2& lanes, RawRowMax& acc, std::size_t cols) {
  double v[2];
  double ix[2];
  vst1q_f64(v, lanes.best);
  vst1q_f64(ix, lanes.index);
  for (int l = 0; l < 2; ++l) {
    if (v[l] >= 0.0) offer(acc, v[l], ix[l], cols);
  }
}

}  // namespace

RawRowMax rows_times_basis_max_neon(const double* coef_re, const double* coef_im,
                                    std::size_t rows, std::size_t terms,
                                    const double* basis_re, const double* basis_im,
                                    std::size_t cols) {
  Lane2 lo;
  Lane2 hi;
  RawRowMax tail{-1.0, 0, 0};
  const double offsets[2] = {0.0, 1.0};
  const float64x2_t lane_offset = vld1q_f64(offsets);

  for (std::size_t r = 0; r < rows; ++r) {
    const double* cr = coef_re + r * terms;
    const double* ci = coef_im + r * terms;
    const double row_base = static_cast<double>(r * cols);
    std::size_t j = 0;

    for (; j + 4 <= cols; j += 4) {
      float64x2_t ar0 = vdupq_n_f64(0.0);
      float64x2_t ai0 = vdupq_n_f64(0.0);
      float64x2_t ar1 = vdupq_n_f64(0.0);
      float64x2_t ai1 = vdupq_n_f64(0.0);
      for (std::size_t k = 0; k < terms; ++k) {
        const float64x2_t c_re = vdupq_n_f64(cr[k]);
        const float64x2_t c_im = vdupq_n_f64(ci[k]);
        const double* br = basis_re + k * cols + j;
        const double* bi = basis_im + k * cols + j;
        const float64x2_t er0 = vld1q_f64(br);
        const float64x2_t ei0 = vld1q_f64(bi);
        const float64x2_t er1 = vld1q_f64(br + 2);
        const float64x2_t ei1 = vld1q_f64(bi + 2);
        ar0 = vfmsq_f64(vfmaq_f64(ar0, c_re, er0), c_im, ei0);
        ai0 = vfmaq_f64(vfmaq_f64(ai0, c_re, ei0), c_im, er0);
        ar1 = vfmsq_f64(vfmaq_f64(ar1, c_re, er1), c_im, ei1);
        ai1 = vfmaq_f64(vfmaq_f64(ai1, c_re, ei1), c_im, er1);
      }
      const float64x2_t m0 = vfmaq_f64(vmulq_f64(ai0, ai0), ar0, ar0);
      const float64x2_t m1 = vfmaq_f64(vmulq_f64(ai1, ai1), ar1, ar1);
      const float64x2_t flat0 = vaddq_f64(vdupq_n_f64(row_base + static_cast<double>(j)), lane_offset);
      lo.update(m0, flat0);
      hi.update(m1, vaddq_f64(flat0, vdupq_n_f64(2.0)));
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
