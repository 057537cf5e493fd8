// qa-spectral-lab: command-line front end for the quantum annulus toolkit.
//
// Exit codes: 0 every check passed, 1 a check failed (or its hypothesis did
// not hold), 2 the input could not be used.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "qasl/bounds.hpp"
#include "qasl/error.hpp"
#include "qasl/extremal.hpp"
#include "qasl/harness.hpp"
#include "qasl/io.hpp"
#include "qasl/qannulus.hpp"
#include "qasl/supnorm.hpp"

namespace {

using qasl::io::Json;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

struct Common {
  std::string config_path;
  double r = 2.0;
  std::uint64_t seed = 1;
  int samples = 100;
  std::string out;
  unsigned workers = 1;
};

// "1..8", "2,4,8" or a mix such as "1..3,8".
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      const auto dots = item.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } else {
        const int lo = std::stoi(item.substr(0, dots), &used);
        if (used != dots) throw std::invalid_argument(item);
        const std::string hi_text = item.substr(dots + 2);
        const int hi = std::stoi(hi_text, &used);
        if (used != hi_text.size() || hi < lo) throw std::invalid_argument(item);
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::logic_error&) {
      throw qasl::InputError("bad integer list '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (!out.empty()) qasl::io::write_text_file(out, text);
  std::cout << text;
}

// Config file first, then any flag given explicitly on the command line.
qasl::ExperimentConfig load_config(const Common& c, const CLI::App& app) {
  qasl::ExperimentConfig cfg;
  if (!c.config_path.empty()) cfg = qasl::config_from_json(qasl::io::read_json_file(c.config_path));
  if (app.count("--r") > 0) cfg.r = c.r;
  if (app.count("--seed") > 0) cfg.seed = c.seed;
  if (app.count("--samples") > 0) cfg.n_samples = c.samples;
  if (app.count("--out") > 0) cfg.output_path = c.out;
  if (app.count("--workers") > 0) cfg.workers = c.workers;
  return cfg;
}

int finish_report(const qasl::Report& rep) {
  if (!rep.config.output_path.empty()) qasl::write_report(rep, rep.config.output_path);
  Json summary = rep.to_json();
  summary.erase("rows");
  std::cout << summary.dump(2) << "\n";
  return rep.all_pass ? kExitPass : kExitViolation;
}

int cmd_check(const Common& c, const std::string& matrix_path) {
  const qasl::AnnulusParams params(c.r);
  const auto T = qasl::io::matrix_from_json(qasl::io::read_json_file(matrix_path));
  const auto m = qasl::membership(T, params);
  emit(Json{{"r", params.r()},
            {"in_qa", m.in_qa},
            {"in_qa_beta", m.in_qa_beta},
            {"routes_agree", m.routes_agree},
            {"is_qa_unitary", m.is_qa_unitary},
            {"norm_T", m.norm_T},
            {"norm_T_inv", std::isfinite(m.norm_Tinv) ? Json(m.norm_Tinv) : Json(nullptr)},
            {"min_beta_eig", std::isfinite(m.min_beta_eig) ? Json(m.min_beta_eig) : Json(nullptr)},
            {"reason", m.reason}},
       c.out);
  return m.in_qa && m.routes_agree ? kExitPass : kExitViolation;
}

int cmd_dilate(const Common& c, const std::string& matrix_path, int n_abs) {
  const qasl::AnnulusParams params(c.r);
  const auto T = qasl::io::matrix_from_json(qasl::io::read_json_file(matrix_path));
  const auto d = qasl::dilate(T, params, -n_abs, n_abs);
  Json errors = Json::object();
  for (const auto& [n, e] : d.compression_errors) errors[std::to_string(n)] = e;
  emit(Json{{"r", params.r()},
            {"hat_T", qasl::io::matrix_to_json(d.hat_T)},
            {"hat_T_inv", qasl::io::matrix_to_json(d.hat_T_inv)},
            {"defect_norm", d.defect_norm},
            {"inverse_error", d.inverse_error},
            {"gram_block_error", d.gram_block_error},
            {"compression_errors", errors},
            {"verified", d.verified}},
       c.out);
  return d.verified ? kExitPass : kExitViolation;
}

int cmd_decompose(const Common& c, const std::string& poly_path, const std::string& which) {
  const qasl::AnnulusParams params(c.r);
  const auto g = qasl::io::poly_from_json(qasl::io::read_json_file(poly_path));
  qasl::EstimateKind kind = qasl::EstimateKind::sign_parts;
  if (which == "pair") {
    kind = qasl::EstimateKind::pair_parts;
  } else if (which != "sign") {
    throw qasl::InputError("--which must be 'pair' or 'sign'");
  }
  const auto rep = qasl::verify_decomposition_estimates(g, params, kind);
  Json parts = Json::array();
  for (std::size_t i = 0; i < rep.parts.size(); ++i) {
    const auto& e = rep.estimates[i];
    parts.push_back({{"pattern", e.pattern.label()},
                     {"part", qasl::io::poly_to_json(rep.parts[i].part)},
                     {"part_sup", e.part_sup},
                     {"part_error", e.part_error},
                     {"ratio", e.ratio},
                     {"bound", e.bound},
                     {"pass", e.pass}});
  }
  emit(Json{{"r", params.r()},
            {"kind", which},
            {"g_sup", rep.g_sup.value},
            {"g_sup_error", rep.g_sup.certified_error},
            {"parts", parts},
            {"all_pass", rep.all_pass}},
       c.out);
  return rep.all_pass ? kExitPass : kExitViolation;
}

int cmd_scan(const Common& c, const CLI::App& app, const CLI::App& sub, const std::string& p_text,
             const std::string& m_text, int n) {
  const auto cfg = load_config(c, app);
  const qasl::AnnulusParams params(cfg.r);
  const bool from_config = sub.count("--p") == 0 && sub.count("--m") == 0 && !cfg.scan_p.empty();
  const auto p_list = from_config ? cfg.scan_p : parse_int_list(p_text);
  const auto m_list = from_config ? cfg.scan_m : parse_int_list(m_text);
  const int power = sub.count("--n") == 0 && !c.config_path.empty() ? cfg.scan_n : n;
  const auto table = qasl::lower_bound_scan(params, p_list, m_list, power);
  Json j = qasl::scan_json(table);
  j["r"] = params.r();
  const std::string text = j.dump(2) + "\n";
  if (!cfg.output_path.empty()) {
    std::filesystem::path json_path(cfg.output_path);
    std::filesystem::path csv_path(cfg.output_path);
    if (json_path.extension() == ".csv") {
      json_path.replace_extension(".json");
    } else {
      csv_path.replace_extension(".csv");
    }
    qasl::io::write_text_file(json_path.string(), text);
    qasl::io::write_text_file(csv_path.string(), qasl::scan_csv(table));
  }
  std::cout << text;
  return table.all_within_upper ? kExitPass : kExitViolation;
}

int run(int argc, char** argv) {
  CLI::App app{"Spectral-constant experiments for the quantum annulus", "qa-spectral-lab"};
  app.set_version_flag("--version", std::string(qasl::kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--config", c.config_path, "Experiment config (flat JSON object)");
  app.add_option("--r", c.r, "Annulus radius r > 1");
  app.add_option("--seed", c.seed, "RNG seed");
  app.add_option("--samples", c.samples, "Number of random samples")->check(CLI::NonNegativeNumber);
  app.add_option("--out", c.out, "Output path (report JSON; CSV table next to it)");
  app.add_option("--workers", c.workers, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);

  std::string matrix_path;
  auto* check = app.add_subcommand("check", "Quantum annulus membership of a matrix");
  check->add_option("--matrix", matrix_path, "Matrix JSON file")->required();

  int n_abs = 4;
  auto* dilate = app.add_subcommand("dilate", "Explicit quantum annulus unitary extension");
  dilate->add_option("--matrix", matrix_path, "Matrix JSON file")->required();
  dilate->add_option("--powers", n_abs, "Check compressions for n in [-k, k]")->check(CLI::NonNegativeNumber);

  std::string poly_path;
  std::string which = "sign";
  auto* decompose = app.add_subcommand("decompose", "Sign-pattern decomposition and its estimates");
  decompose->add_option("--poly", poly_path, "Laurent polynomial JSON file")->required();
  decompose->add_option("--which", which, "sign (every pattern) or pair (two-variable constants)");

  std::string kind_name;
  std::string mode_name;
  std::string dims_text;
  std::string degrees_text;
  auto* verify = app.add_subcommand("verify-bounds", "Random spectral ratios against a catalog bound");
  verify->add_option("--kind", kind_name, "annulus, biannulus or dc_poly");
  verify->add_option("--mode", mode_name, "single, commuting_pair or doubly_commuting(n)");
  verify->add_option("--dims", dims_text, "Dimensions (per leg), e.g. 2..4");
  verify->add_option("--degrees", degrees_text, "Polynomial degrees, e.g. 1..6");

  std::string p_text = "64";
  std::string m_text = "1..8";
  int scan_n = 1;
  auto* scan = app.add_subcommand("scan-extremal", "Lower-bound ratios from cyclic weighted shifts");
  scan->add_option("--p", p_text, "Half periods, e.g. 8,16,64");
  scan->add_option("--m", m_text, "Test-function degrees, e.g. 1..8");
  scan->add_option("--n", scan_n, "Tensor power")->check(CLI::PositiveNumber);

  auto* report = app.add_subcommand("report", "Run the experiment described by --config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*check) return cmd_check(c, matrix_path);
    if (*dilate) return cmd_dilate(c, matrix_path, n_abs);
    if (*decompose) return cmd_decompose(c, poly_path, which);
    if (*scan) return cmd_scan(c, app, *scan, p_text, m_text, scan_n);
    if (*verify) {
      const auto base = load_config(c, app);
      Json j = qasl::config_echo(base);
      if (base.mode == qasl::TupleMode::doubly_commuting) {
        j["mode"] = "doubly_commuting(" + std::to_string(base.n_vars) + ")";
        j.erase("n_vars");
      }
      if (!base.bound_kind) j.erase("bound_kind");
      if (!mode_name.empty()) {
        j["mode"] = mode_name;
        j.erase("n_vars");
        if (mode_name == "commuting_pair") j["n_vars"] = 2;
      }
      if (!kind_name.empty()) j["bound_kind"] = kind_name;
      if (!dims_text.empty()) j["dims"] = parse_int_list(dims_text);
      if (!degrees_text.empty()) j["degrees"] = parse_int_list(degrees_text);
      j["workers"] = base.workers;
      j["output_path"] = base.output_path;
      return finish_report(qasl::run_experiment(qasl::config_from_json(j)));
    }
    if (*report) {
      if (c.config_path.empty()) throw qasl::InputError("report needs --config");
      return finish_report(qasl::run_experiment(load_config(c, app)));
    }
  } catch (const qasl::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const qasl::ResourceError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const qasl::Error& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
