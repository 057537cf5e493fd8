#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "backends.hpp"
#include "qasl/kernels.hpp"

namespace qasl::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(QASL_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

detail::RowsTimesBasisFn function_for(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return &detail::rows_times_basis_max_scalar;
    case Backend::avx2:
#if defined(QASL_BUILD_AVX2)
      if (cpu_has_avx2()) return &detail::rows_times_basis_max_avx2;
#endif
      return nullptr;
    case Backend::neon:
#if defined(QASL_BUILD_NEON)
      return &detail::rows_times_basis_max_neon;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Backend detect_backend() {
  if (const char* env = std::getenv("QASL_KERNELS")) {
    const std::string want(env);
    for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
      if (want == backend_name(b) && function_for(b) != nullptr) return b;
    }
  }
  if (function_for(Backend::avx2) != nullptr) return Backend::avx2;
  if (function_for(Backend::neon) != nullptr) return Backend::neon;
  return Backend::scalar;
}

std::atomic<Backend>& active() {
  static std::atomic<Backend> backend{detect_backend()};
  return backend;
}

RowMax run(detail::RowsTimesBasisFn fn, const SplitMatrix& rows, const SplitMatrix& basis) {
  if (rows.cols != basis.rows) {
    throw std::invalid_argument("rows_times_basis_max: inner dimensions differ");
  }
  if (rows.rows == 0 || basis.cols == 0) return {};
  const auto raw = fn(rows.re.data(), rows.im.data(), rows.rows, rows.cols, basis.re.data(),
                      basis.im.data(), basis.cols);
  return {raw.value_sq, raw.row, raw.col};
}

}  // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

bool backend_available(Backend backend) { return function_for(backend) != nullptr; }

Backend active_backend() { return active().load(std::memory_order_relaxed); }

void set_active_backend(Backend backend) {
  if (!backend_available(backend)) {
    throw std::invalid_argument("kernel backend unavailable: " + std::string(backend_name(backend)));
  }
  active().store(backend, std::memory_order_relaxed);
}

RowMax rows_times_basis_max(const SplitMatrix& rows, const SplitMatrix& basis) {
  return run(function_for(active_backend()), rows, basis);
}

RowMax rows_times_basis_max(const SplitMatrix& rows, const SplitMatrix& basis, Backend backend) {
  const auto fn = function_for(backend);
  if (fn == nullptr) {
    throw std::invalid_argument("kernel backend unavailable: " + std::string(backend_name(backend)));
  }
  return run(fn, rows, basis);
}

}  // namespace qasl::kernels
