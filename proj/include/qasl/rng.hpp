#pragma once

// Counter-based Philox4x32-10 generator. A stream is fully determined by
// (seed, stream id), so per-sample streams do not depend on scheduling.

#include <array>
#include <cstdint>
#include <string_view>

#include "qasl/linalg.hpp"

namespace qasl {

class Philox {
 public:
  static constexpr std::string_view kAlgorithm = "philox4x32-10";

  using result_type = std::uint32_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return 0xFFFFFFFFu; }

  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0);

  /// Raw Philox4x32-10 block function.
  [[nodiscard]] static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                                          std::array<std::uint32_t, 2> key);

  result_type operator()();
  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in [a, b).
  double uniform(double a, double b);
  /// Uniform integer in [0, n). Requires n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal (Box-Muller).
  double normal();
  /// (N(0,1) + i N(0,1)) / sqrt(2).
  Complex complex_normal();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qasl
