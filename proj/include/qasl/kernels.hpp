#pragma once

// Runtime-dispatched inner loop of the certified sup-norm sweep.
//
// Given R coefficient rows c_r (length K) and a K x N basis E, the kernel
// computes v(r, j) = sum_k c_r[k] * E[k][j] for every (r, j) and returns the
// largest |v|^2 together with its position. Ties resolve to the smallest
// row-major flat index r*N + j.

#include <cstddef>
#include <string_view>
#include <vector>

namespace qasl::kernels {

enum class Backend { scalar, avx2, neon };

/// Split-complex row-major matrix: element (i, j) is re[i*cols+j] + i*im[i*cols+j].
struct SplitMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> re;
  std::vector<double> im;

  SplitMatrix() = default;
  SplitMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), re(r * c, 0.0), im(r * c, 0.0) {}
};

struct RowMax {
  double value_sq = -1.0;
  std::size_t row = 0;
  std::size_t col = 0;
};

/// Backend-independent entry point; rows.cols must equal basis.rows.
[[nodiscard]] RowMax rows_times_basis_max(const SplitMatrix& rows, const SplitMatrix& basis);

/// Same computation pinned to a specific backend (for equivalence tests).
/// Throws std::invalid_argument if the backend is unavailable.
[[nodiscard]] RowMax rows_times_basis_max(const SplitMatrix& rows, const SplitMatrix& basis,
                                          Backend backend);

[[nodiscard]] bool backend_available(Backend backend);

/// Backend used by the dispatching entry point. Chosen once from CPU features;
/// the QASL_KERNELS environment variable (scalar|avx2|neon) overrides it.
[[nodiscard]] Backend active_backend();

/// Replace the active backend (tests, benchmarks). Not thread-safe with
/// concurrent kernel calls.
void set_active_backend(Backend backend);

[[nodiscard]] std::string_view backend_name(Backend backend);

}  // namespace qasl::kernels
