#include "qasl/harness.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <set>

#include "qasl/error.hpp"
#include "qasl/parallel.hpp"

namespace qasl {

ComplexMatrix haar_unitary(int dim, Philox& rng) {
  if (dim < 1) throw InputError("haar_unitary: dim must be >= 1");
  ComplexMatrix G(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) G(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  ComplexMatrix Q = qr.householderQ();
  const ComplexMatrix& R = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const Complex d = R(j, j);
    const double a = std::abs(d);
    if (a > 0.0) Q.col(j) *= d / a;
  }
  return Q;
}

ComplexMatrix gen_qa_operator(int dim, const AnnulusParams& params, Philox& rng) {
  if (dim < 1) throw InputError("gen_qa_operator: dim must be >= 1");
  const ComplexMatrix V = haar_unitary(dim, rng);
  const ComplexMatrix W = haar_unitary(dim, rng);
  Eigen::VectorXcd s(dim);
  for (int i = 0; i < dim; ++i) s(i) = std::pow(params.r(), rng.uniform(-1.0, 1.0));
  return V * s.asDiagonal() * W.adjoint();
}

std::string to_string(TupleMode mode) {
  switch (mode) {
    case TupleMode::single: return "single";
    case TupleMode::commuting_pair: return "commuting_pair";
    case TupleMode::doubly_commuting: return "doubly_commuting";
  }
  return "unknown";
}

namespace {

constexpr double kPairCondition = 1.4;
constexpr double kPairEigenExponent = 0.85;

ComplexMatrix leg_embedding(const ComplexMatrix& S, int position, int n) {
  const auto d = S.rows();
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int j = 0; j < n; ++j) {
    out = kron(out, j == position ? S : ComplexMatrix(ComplexMatrix::Identity(d, d)));
  }
  return out;
}

}  // namespace

GeneratedTuple gen_tuple(TupleMode mode, int n, int dim, const AnnulusParams& params, Philox& rng,
                         int budget) {
  if (dim < 1) throw InputError("gen_tuple: dim must be >= 1");
  GeneratedTuple out;
  switch (mode) {
    case TupleMode::single:
      if (n != 1) throw InputError("gen_tuple: single mode needs n = 1");
      out.tuple = OperatorTuple{{gen_qa_operator(dim, params, rng)}, CommutationMode::commuting};
      out.generator = "singular-value surgery (Haar V, W; log-uniform singular values)";
      return out;
    case TupleMode::commuting_pair: {
      if (n != 2) throw InputError("gen_tuple: commuting_pair mode needs n = 2");
      out.generator = "shared similarity V D_j V^-1 (cond(V) <= 1.4), rejection sampled";
      std::string last_reason;
      for (int draw = 1; draw <= budget; ++draw) {
        Eigen::VectorXcd s(dim);
        for (int i = 0; i < dim; ++i) s(i) = std::exp(rng.uniform(-0.5, 0.5) * std::log(kPairCondition));
        const ComplexMatrix V = haar_unitary(dim, rng) * s.asDiagonal() * haar_unitary(dim, rng);
        const ComplexMatrix V_inv = V.partialPivLu().inverse();
        std::vector<ComplexMatrix> ops;
        for (int j = 0; j < 2; ++j) {
          Eigen::VectorXcd lam(dim);
          for (int i = 0; i < dim; ++i) {
            lam(i) = std::polar(std::pow(params.r(), kPairEigenExponent * rng.uniform(-1.0, 1.0)),
                                rng.uniform(0.0, 2.0 * std::numbers::pi));
          }
          ops.push_back(V * lam.asDiagonal() * V_inv);
        }
        OperatorTuple t{ops, CommutationMode::commuting};
        bool ok = true;
        for (const auto& T : t.ops) {
          const auto m = membership(T, params);
          if (!m.in_qa) {
            ok = false;
            last_reason = m.reason;
          }
        }
        if (ok && commutator_defect(t) > Tolerance{}.abs) {
          ok = false;
          last_reason = "commutator above tolerance";
        }
        if (ok) {
          out.tuple = std::move(t);
          out.draws = draw;
          return out;
        }
      }
      throw GenerationError("gen_tuple: commuting_pair rejection budget of " + std::to_string(budget) +
                            " draws exhausted (dim " + std::to_string(dim) + ", r " +
                            std::to_string(params.r()) + ", last rejection: " + last_reason + ")");
    }
    case TupleMode::doubly_commuting: {
      if (n < 1) throw InputError("gen_tuple: doubly_commuting mode needs n >= 1");
      out.generator = "tensor legs I (x) S_j (x) I with independent singular-value surgery draws";
      OperatorTuple t;
      t.mode = CommutationMode::doubly_commuting;
      for (int j = 0; j < n; ++j) t.ops.push_back(leg_embedding(gen_qa_operator(dim, params, rng), j, n));
      check_tuple(t);
      out.tuple = std::move(t);
      return out;
    }
  }
  throw InputError("gen_tuple: unknown mode");
}

LaurentPoly random_laurent(int n_vars, int degree, const AnnulusParams& params, Philox& rng) {
  if (n_vars < 1) throw InputError("random_laurent: n_vars must be >= 1");
  if (degree < 0) throw InputError("random_laurent: degree must be >= 0");
  // Every exponent vector in the l1 ball of radius `degree`.
  std::vector<Exponent> ball;
  Exponent e(static_cast<std::size_t>(n_vars), -degree);
  for (;;) {
    int s = 0;
    for (int x : e) s += std::abs(x);
    if (s <= degree) ball.push_back(e);
    int i = n_vars - 1;
    while (i >= 0 && e[static_cast<std::size_t>(i)] == degree) e[static_cast<std::size_t>(i--)] = -degree;
    if (i < 0) break;
    ++e[static_cast<std::size_t>(i)];
  }
  std::vector<std::size_t> top;
  for (std::size_t k = 0; k < ball.size(); ++k) {
    int s = 0;
    for (int x : ball[k]) s += std::abs(x);
    if (s == degree) top.push_back(k);
  }
  const std::size_t forced = top[rng.below(top.size())];

  LaurentPoly g(n_vars);
  for (std::size_t k = 0; k < ball.size(); ++k) {
    const bool keep = n_vars == 1 || k == forced || rng.uniform() < 0.5;
    const Complex c = rng.complex_normal();
    if (!keep) continue;
    int s = 0;
    for (int x : ball[k]) s += std::abs(x);
    g.add(ball[k], c * std::pow(params.r(), -s));
  }
  return g;
}

BoundKind ExperimentConfig::effective_kind() const {
  if (bound_kind) return *bound_kind;
  switch (mode) {
    case TupleMode::single: return BoundKind::annulus;
    case TupleMode::commuting_pair: return BoundKind::biannulus;
    case TupleMode::doubly_commuting: return BoundKind::dc_poly;
  }
  return BoundKind::annulus;
}

namespace {

std::vector<int> int_list(const io::Json& v, const char* key) {
  if (!v.is_array()) throw InputError(std::string("config: ") + key + " must be an array of integers");
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw InputError(std::string("config: ") + key + " must contain integers");
    out.push_back(x.get<int>());
  }
  return out;
}

int positive_int(const io::Json& v, const char* key, int min_value) {
  if (!v.is_number_integer() || v.get<long long>() < min_value) {
    throw InputError(std::string("config: ") + key + " must be an integer >= " + std::to_string(min_value));
  }
  return v.get<int>();
}

}  // namespace

ExperimentConfig config_from_json(const io::Json& j) {
  if (!j.is_object()) throw InputError("config: expected a JSON object");
  static const std::set<std::string> known = {"r", "seed", "dims", "degrees", "n_samples", "mode", "n_vars",
                                              "bound_kind", "output_path", "workers", "scan_p", "scan_m",
                                              "scan_n"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw InputError("config: unknown field '" + key + "'");
  }
  ExperimentConfig c;
  if (j.contains("r")) {
    if (!j["r"].is_number()) throw InputError("config: r must be a number");
    c.r = j["r"].get<double>();
  }
  (void)AnnulusParams(c.r);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw InputError("config: seed must be a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("dims")) c.dims = int_list(j["dims"], "dims");
  if (j.contains("degrees")) c.degrees = int_list(j["degrees"], "degrees");
  if (j.contains("n_samples")) c.n_samples = positive_int(j["n_samples"], "n_samples", 0);
  if (j.contains("n_vars")) c.n_vars = positive_int(j["n_vars"], "n_vars", 1);
  bool n_vars_given = j.contains("n_vars");
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) throw InputError("config: mode must be a string");
    const auto m = j["mode"].get<std::string>();
    if (m == "single") {
      c.mode = TupleMode::single;
      if (!n_vars_given) c.n_vars = 1;
    } else if (m == "commuting_pair") {
      c.mode = TupleMode::commuting_pair;
      if (!n_vars_given) c.n_vars = 2;
    } else if (m == "doubly_commuting") {
      c.mode = TupleMode::doubly_commuting;
      if (!n_vars_given) c.n_vars = 2;
    } else if (m.rfind("doubly_commuting(", 0) == 0 && m.back() == ')') {
      c.mode = TupleMode::doubly_commuting;
      const auto inner = m.substr(17, m.size() - 18);
      try {
        std::size_t used = 0;
        c.n_vars = std::stoi(inner, &used);
        if (used != inner.size() || c.n_vars < 1) throw std::invalid_argument(inner);
      } catch (const std::exception&) {
        throw InputError("config: bad mode '" + m + "'");
      }
    } else {
      throw InputError("config: unknown mode '" + m + "'");
    }
  }
  if (c.mode == TupleMode::single && c.n_vars != 1) throw InputError("config: single mode needs n_vars = 1");
  if (c.mode == TupleMode::commuting_pair && c.n_vars != 2) {
    throw InputError("config: commuting_pair mode needs n_vars = 2");
  }
  if (j.contains("bound_kind")) {
    if (!j["bound_kind"].is_string()) throw InputError("config: bound_kind must be a string");
    c.bound_kind = parse_bound_kind(j["bound_kind"].get<std::string>());
  }
  if (j.contains("output_path")) {
    if (!j["output_path"].is_string()) throw InputError("config: output_path must be a string");
    c.output_path = j["output_path"].get<std::string>();
  }
  if (j.contains("workers")) c.workers = static_cast<unsigned>(positive_int(j["workers"], "workers", 1));
  if (j.contains("scan_p")) c.scan_p = int_list(j["scan_p"], "scan_p");
  if (j.contains("scan_m")) c.scan_m = int_list(j["scan_m"], "scan_m");
  if (j.contains("scan_n")) c.scan_n = positive_int(j["scan_n"], "scan_n", 1);
  if (c.dims.empty() || c.degrees.empty()) throw InputError("config: dims and degrees must be non-empty");
  for (int d : c.dims) {
    if (d < 1) throw InputError("config: dims must be positive");
  }
  for (int d : c.degrees) {
    if (d < 0) throw InputError("config: degrees must be nonnegative");
  }
  if (c.scan_p.empty() != c.scan_m.empty()) throw InputError("config: scan_p and scan_m go together");
  return c;
}

io::Json config_echo(const ExperimentConfig& c) {
  io::Json j{{"r", c.r},
             {"seed", c.seed},
             {"dims", c.dims},
             {"degrees", c.degrees},
             {"n_samples", c.n_samples},
             {"mode", to_string(c.mode)},
             {"n_vars", c.n_vars},
             {"bound_kind", to_string(c.effective_kind())}};
  if (!c.scan_p.empty()) {
    j["scan_p"] = c.scan_p;
    j["scan_m"] = c.scan_m;
    j["scan_n"] = c.scan_n;
  }
  return j;
}

Report run_experiment(const ExperimentConfig& config) {
  const AnnulusParams params(config.r);
  const BoundKind kind = config.effective_kind();
  const int n = config.n_vars;

  Report rep;
  rep.config = config;
  rep.kind = kind;
  rep.rows.resize(static_cast<std::size_t>(config.n_samples));
  std::vector<std::string> generators(rep.rows.size());

  parallel_for(rep.rows.size(), config.workers, [&](std::size_t i) {
    Philox rng(config.seed, i);
    const int dim = config.dims[rng.below(config.dims.size())];
    const int degree = config.degrees[rng.below(config.degrees.size())];
    auto gen = gen_tuple(config.mode, n, dim, params, rng);
    const auto g = random_laurent(n, degree, params, rng);
    SampleRow row;
    row.sample_id = i;
    row.leg_dim = dim;
    row.dim = gen.tuple.dim();
    row.degree = degree;
    row.draws = gen.draws;
    row.ratio = spectral_ratio(gen.tuple, g, params, kind);
    rep.rows[i] = row;
    generators[i] = gen.generator;
  });
  if (!generators.empty()) {
    rep.generator = generators.front();
  } else {
    Philox probe(config.seed, 0);
    rep.generator = gen_tuple(config.mode, n, 1, params, probe).generator;
  }

  rep.all_pass = true;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i].ratio;
    if (r.pass) ++rep.pass_count;
    rep.all_pass = rep.all_pass && r.pass;
    if (i == 0 || r.ratio > rep.max_ratio) {
      rep.max_ratio = r.ratio;
      rep.argmax = i;
    }
  }
  if (!config.scan_p.empty()) {
    rep.scan = lower_bound_scan(params, config.scan_p, config.scan_m, config.scan_n);
    rep.all_pass = rep.all_pass && rep.scan->all_within_upper;
  }
  return rep;
}

io::Json scan_json(const ScanTable& table) {
  io::Json rows = io::Json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"p", r.p},
                    {"m", r.m},
                    {"n", r.n},
                    {"ratio", r.ratio},
                    {"reference", r.reference},
                    {"upper", r.upper},
                    {"within_upper", r.within_upper}});
  }
  return io::Json{{"rows", std::move(rows)},
                  {"tensor_check",
                   {{"p", table.tensor.p},
                    {"m", table.tensor.m},
                    {"norm", table.tensor.norm},
                    {"tensor_norm", table.tensor.tensor_norm},
                    {"rel_error", table.tensor.rel_error}}},
                  {"all_within_upper", table.all_within_upper}};
}

std::string scan_csv(const ScanTable& table) {
  std::string out = "p,m,n,ratio,reference,upper\n";
  for (const auto& r : table.rows) {
    out += std::to_string(r.p) + ',' + std::to_string(r.m) + ',' + std::to_string(r.n) + ',' +
           io::format_double(r.ratio) + ',' + io::format_double(r.reference) + ',' +
           io::format_double(r.upper) + '\n';
  }
  return out;
}

io::Json Report::to_json() const {
  const AnnulusParams params(config.r);
  io::Json rows_json = io::Json::array();
  for (const auto& row : rows) {
    rows_json.push_back({{"sample_id", row.sample_id},
                         {"leg_dim", row.leg_dim},
                         {"dim", row.dim},
                         {"degree", row.degree},
                         {"draws", row.draws},
                         {"ratio", row.ratio.ratio},
                         {"g_norm_operator", row.ratio.g_norm_operator},
                         {"g_supnorm", row.ratio.g_supnorm},
                         {"certified_error", row.ratio.certified_error},
                         {"bound", row.ratio.bound_used},
                         {"margin", row.ratio.margin()},
                         {"pass", row.ratio.pass}});
  }
  io::Json j{{"version", kToolVersion},
             {"rng", Philox::kAlgorithm},
             {"generator", generator},
             {"config", config_echo(config)},
             {"bound", {{"kind", to_string(kind)}, {"value", bound_value(kind, params, config.n_vars)}}},
             {"summary",
              {{"n_samples", rows.size()},
               {"pass_count", pass_count},
               {"max_ratio", max_ratio},
               {"argmax", argmax},
               {"all_pass", all_pass}}},
             {"rows", std::move(rows_json)}};
  if (scan) j["scan"] = scan_json(*scan);
  return j;
}

std::string Report::csv() const {
  std::string out = "sample_id,dim,degree,ratio,bound,margin\n";
  for (const auto& row : rows) {
    out += std::to_string(row.sample_id) + ',' + std::to_string(row.dim) + ',' + std::to_string(row.degree) +
           ',' + io::format_double(row.ratio.ratio) + ',' + io::format_double(row.ratio.bound_used) + ',' +
           io::format_double(row.ratio.margin()) + '\n';
  }
  return out;
}

void write_report(const Report& report, const std::string& path) {
  std::filesystem::path p(path);
  std::filesystem::path json_path = p;
  std::filesystem::path csv_path = p;
  if (p.extension() == ".csv") {
    json_path.replace_extension(".json");
  } else {
    csv_path.replace_extension(".csv");
  }
  io::write_text_file(json_path.string(), report.to_json().dump(2) + "\n");
  io::write_text_file(csv_path.string(), report.csv());
}

}  // namespace qasl
