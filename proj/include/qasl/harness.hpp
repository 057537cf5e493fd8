#pragma once

// Seeded generators for QA_r operators and tuples, and the experiment runner
// behind the report subcommands.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qasl/bounds.hpp"
#include "qasl/extremal.hpp"
#include "qasl/io.hpp"
#include "qasl/laurent.hpp"
#include "qasl/qannulus.hpp"
#include "qasl/rng.hpp"

namespace qasl {

inline constexpr std::string_view kToolVersion = "qa-spectral-lab 0.1.0";

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal moved into Q.
[[nodiscard]] ComplexMatrix haar_unitary(int dim, Philox& rng);

/// V diag(s) W* with V, W Haar and s_i log-uniform in [1/r, r]. Throws InputError for dim < 1.
[[nodiscard]] ComplexMatrix gen_qa_operator(int dim, const AnnulusParams& params, Philox& rng);

enum class TupleMode { single, commuting_pair, doubly_commuting };

[[nodiscard]] std::string to_string(TupleMode mode);

struct GeneratedTuple {
  OperatorTuple tuple;
  int draws = 1;          // attempts used (rejection sampling)
  std::string generator;  // generator kind, echoed into reports
};

inline constexpr int kDefaultRejectionBudget = 1000;

/// single: one gen_qa_operator draw (n must be 1).
/// commuting_pair: T_j = V D_j V^-1 with a shared non-unitary V of condition
///   number <= 1.4, redrawn until both members are in QA_r (n must be 2).
/// doubly_commuting: T_j = I (x) ... (x) S_j (x) ... (x) I with independent legs S_j.
/// Throws InputError on an inconsistent n and GenerationError when the
/// rejection budget runs out.
[[nodiscard]] GeneratedTuple gen_tuple(TupleMode mode, int n, int dim, const AnnulusParams& params,
                                       Philox& rng, int budget = kDefaultRejectionBudget);

/// Random n-variable Laurent polynomial with max_abs_degree exactly `degree`;
/// coefficients are complex Gaussians scaled by r^-|nu|.
[[nodiscard]] LaurentPoly random_laurent(int n_vars, int degree, const AnnulusParams& params, Philox& rng);

struct ExperimentConfig {
  double r = 2.0;
  std::uint64_t seed = 1;
  std::vector<int> dims{3};
  std::vector<int> degrees{4};
  int n_samples = 100;
  TupleMode mode = TupleMode::single;
  int n_vars = 1;
  std::optional<BoundKind> bound_kind;  // default follows the mode
  std::string output_path;
  unsigned workers = 1;
  std::vector<int> scan_p;
  std::vector<int> scan_m;
  int scan_n = 1;

  [[nodiscard]] BoundKind effective_kind() const;
};

/// Flat JSON object with the ExperimentConfig field names. mode is "single",
/// "commuting_pair", "doubly_commuting" (with n_vars) or "doubly_commuting(n)".
/// Throws InputError on unknown keys, wrong types or inconsistent values.
[[nodiscard]] ExperimentConfig config_from_json(const io::Json& j);
/// Echo of the fields that determine the result (workers and output_path excluded).
[[nodiscard]] io::Json config_echo(const ExperimentConfig& c);

struct SampleRow {
  std::size_t sample_id = 0;
  int leg_dim = 0;
  Eigen::Index dim = 0;
  int degree = 0;
  int draws = 1;
  RatioReport ratio;
};

struct Report {
  ExperimentConfig config;
  BoundKind kind = BoundKind::annulus;
  std::string generator;
  std::vector<SampleRow> rows;
  double max_ratio = 0.0;
  std::size_t argmax = 0;
  std::size_t pass_count = 0;
  std::optional<ScanTable> scan;
  bool all_pass = false;

  [[nodiscard]] io::Json to_json() const;
  /// sample_id,dim,degree,ratio,bound,margin
  [[nodiscard]] std::string csv() const;
};

[[nodiscard]] Report run_experiment(const ExperimentConfig& config);

/// p,m,n,ratio,reference,upper
[[nodiscard]] std::string scan_csv(const ScanTable& table);
[[nodiscard]] io::Json scan_json(const ScanTable& table);

/// Report JSON at `path` and the row table next to it with a .csv extension
/// (if `path` itself ends in .csv the JSON goes to the .json sibling).
void write_report(const Report& report, const std::string& path);

}  // namespace qasl
