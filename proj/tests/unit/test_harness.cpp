#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qasl/error.hpp"
#include "qasl/harness.hpp"

using namespace qasl;

namespace {

const AnnulusParams R2(2.0);

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("haar unitary and QA_r operator generators") {
  Philox rng(41);
  for (int d : {1, 2, 5}) {
    CHECK(unitary_defect(haar_unitary(d, rng)) <= 1e-13);
    for (int k = 0; k < 20; ++k) {
      const auto T = gen_qa_operator(d, R2, rng);
      const auto m = membership(T, R2);
      CHECK(m.in_qa);
      CHECK(m.routes_agree);
    }
  }
  CHECK_THROWS_AS((void)gen_qa_operator(0, R2, rng), InputError);
}

TEST_CASE("tuple generators") {
  Philox rng(42);
  const auto single = gen_tuple(TupleMode::single, 1, 3, R2, rng);
  CHECK(single.tuple.size() == 1);
  CHECK(single.draws == 1);
  CHECK_FALSE(single.generator.empty());

  for (int k = 0; k < 10; ++k) {
    const auto pair = gen_tuple(TupleMode::commuting_pair, 2, 4, R2, rng);
    REQUIRE(pair.tuple.size() == 2);
    CHECK(commutator_defect(pair.tuple) <= 1e-10);
    for (const auto& T : pair.tuple.ops) CHECK(membership(T, R2).in_qa);
    CHECK(pair.draws >= 1);
  }

  const auto dc = gen_tuple(TupleMode::doubly_commuting, 3, 2, R2, rng);
  CHECK(dc.tuple.size() == 3);
  CHECK(dc.tuple.dim() == 8);
  CHECK(dc.tuple.mode == CommutationMode::doubly_commuting);
  CHECK(adjoint_commutator_defect(dc.tuple) <= 1e-12);

  CHECK_THROWS_AS((void)gen_tuple(TupleMode::single, 2, 3, R2, rng), InputError);
  CHECK_THROWS_AS((void)gen_tuple(TupleMode::commuting_pair, 3, 3, R2, rng), InputError);
  CHECK_THROWS_AS((void)gen_tuple(TupleMode::commuting_pair, 2, 3, R2, rng, 0), GenerationError);
}

TEST_CASE("random_laurent degree and determinism") {
  for (int n = 1; n <= 3; ++n) {
    for (int deg = 0; deg <= 5; ++deg) {
      Philox a(43, static_cast<std::uint64_t>(10 * n + deg));
      Philox b(43, static_cast<std::uint64_t>(10 * n + deg));
      const auto g = random_laurent(n, deg, R2, a);
      CHECK(g.max_abs_degree() == deg);
      CHECK(g.n_vars() == n);
      CHECK(g.coeffs() == random_laurent(n, deg, R2, b).coeffs());
    }
  }
}

TEST_CASE("config parsing") {
  const auto c = config_from_json(io::Json::parse(R"j({"r": 3, "seed": 7, "dims": [2, 3], "degrees": [1],
      "n_samples": 5, "mode": "doubly_commuting(3)", "bound_kind": "dc_poly", "workers": 2})j"));
  CHECK(c.r == 3.0);
  CHECK(c.seed == 7);
  CHECK(c.mode == TupleMode::doubly_commuting);
  CHECK(c.n_vars == 3);
  CHECK(c.workers == 2);
  CHECK(c.effective_kind() == BoundKind::dc_poly);
  CHECK(config_from_json(io::Json::object()).effective_kind() == BoundKind::annulus);
  CHECK(config_from_json(io::Json::parse(R"({"mode": "commuting_pair", "n_vars": 2})")).effective_kind() ==
        BoundKind::biannulus);

  for (const char* bad : {R"({"bogus": 1})", R"({"r": "two"})", R"({"r": 0.5})", R"({"mode": "triple"})",
                          R"({"n_samples": -1})", R"({"dims": []})", R"({"dims": [0]})", R"({"seed": -3})",
                          R"({"mode": "single", "n_vars": 2})", R"({"scan_p": [4]})", R"([1, 2])",
                          R"({"bound_kind": "nope"})"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS((void)run_experiment(config_from_json(io::Json::parse(bad))), InputError);
  }
  const auto echo = config_echo(c);
  CHECK_FALSE(echo.contains("workers"));
  CHECK_FALSE(echo.contains("output_path"));
  CHECK(echo["mode"] == "doubly_commuting");
}

TEST_CASE("experiment report shape") {
  ExperimentConfig c;
  c.n_samples = 6;
  c.dims = {2, 3};
  c.degrees = {2, 3};
  const auto rep = run_experiment(c);
  CHECK(rep.rows.size() == 6);
  CHECK(rep.all_pass);
  CHECK(rep.pass_count == 6);
  const auto j = rep.to_json();
  for (const char* key : {"version", "rng", "generator", "config", "bound", "summary", "rows"}) CHECK(j.contains(key));
  CHECK(j["rng"] == "philox4x32-10");
  CHECK(j["version"] == kToolVersion);
  const auto csv = rep.csv();
  CHECK(csv.rfind("sample_id,dim,degree,ratio,bound,margin\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}

TEST_CASE("reports are byte-identical across worker counts") {
  ExperimentConfig c;
  c.n_samples = 8;
  c.mode = TupleMode::commuting_pair;
  c.n_vars = 2;
  c.dims = {2};
  c.degrees = {2};
  c.scan_p = {4};
  c.scan_m = {1, 2};
  const auto one = run_experiment(c);
  c.workers = 4;
  const auto four = run_experiment(c);
  CHECK(one.to_json().dump(2) == four.to_json().dump(2));
  CHECK(one.csv() == four.csv());
  REQUIRE(one.scan.has_value());
  CHECK(one.scan->rows.size() == 2);

  const auto dir = std::filesystem::temp_directory_path() / "qasl_harness_test";
  std::filesystem::create_directories(dir);
  write_report(one, (dir / "a.json").string());
  write_report(four, (dir / "b.json").string());
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  write_report(one, (dir / "c.csv").string());
  CHECK(std::filesystem::exists(dir / "c.json"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("seeds change the sample stream") {
  ExperimentConfig c;
  c.n_samples = 3;
  const auto a = run_experiment(c);
  c.seed = 2;
  const auto b = run_experiment(c);
  CHECK(a.rows[0].ratio.ratio != b.rows[0].ratio.ratio);
}

TEST_CASE("scan csv") {
  const auto t = lower_bound_scan(R2, {4}, {1, 2}, 1);
  const auto csv = scan_csv(t);
  CHECK(csv.rfind("p,m,n,ratio,reference,upper\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(scan_json(t)["rows"].size() == 2);
}
