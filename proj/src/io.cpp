#include "qasl/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qasl/error.hpp"

namespace qasl::io {

namespace {

double finite_number(const Json& v, const char* what) {
  if (!v.is_number()) throw InputError(std::string(what) + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError(std::string(what) + ": non-finite value");
  return x;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& M) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back({M(i, j).real(), M(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return Json{{"dim", M.rows()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw InputError("matrix: expected an object with \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    throw InputError("matrix: \"dim\" must be a positive integer");
  }
  const auto k = j["dim"].get<Eigen::Index>();
  const Json& entries = j["entries"];
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != k) {
    throw InputError("matrix: \"entries\" must have dim rows");
  }
  ComplexMatrix M(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    const Json& row = entries[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != k) {
      throw InputError("matrix: row " + std::to_string(r) + " does not have dim entries (not square)");
    }
    for (Eigen::Index c = 0; c < k; ++c) {
      const Json& z = row[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2) throw InputError("matrix: entries must be [re, im] pairs");
      M(r, c) = Complex(finite_number(z[0], "matrix entry"), finite_number(z[1], "matrix entry"));
    }
  }
  return M;
}

Json poly_to_json(const LaurentPoly& g) {
  Json terms = Json::array();
  for (const auto& [exp, c] : g.coeffs()) {
    terms.push_back({{"exp", exp}, {"re", c.real()}, {"im", c.imag()}});
  }
  return Json{{"n", g.n_vars()}, {"terms", std::move(terms)}};
}

LaurentPoly poly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("terms")) {
    throw InputError("polynomial: expected an object with \"n\" and \"terms\"");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw InputError("polynomial: \"n\" must be a positive integer");
  }
  const int n = j["n"].get<int>();
  if (!j["terms"].is_array()) throw InputError("polynomial: \"terms\" must be an array");
  LaurentPoly g(n);
  std::set<Exponent> seen;
  for (const Json& t : j["terms"]) {
    if (!t.is_object() || !t.contains("exp") || !t["exp"].is_array()) {
      throw InputError("polynomial: each term needs an \"exp\" array");
    }
    Exponent exp;
    for (const Json& e : t["exp"]) {
      if (!e.is_number_integer()) throw InputError("polynomial: exponents must be integers");
      exp.push_back(e.get<int>());
    }
    if (static_cast<int>(exp.size()) != n) throw InputError("polynomial: exponent arity differs from n");
    if (!seen.insert(exp).second) throw InputError("polynomial: repeated exponent");
    const double re = t.contains("re") ? finite_number(t["re"], "polynomial coefficient") : 0.0;
    const double im = t.contains("im") ? finite_number(t["im"], "polynomial coefficient") : 0.0;
    g.add(exp, Complex(re, im));
  }
  return g;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw InputError("write failed for " + path);
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace qasl::io
