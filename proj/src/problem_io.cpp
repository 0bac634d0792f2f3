#include "goldstein/problem_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

#include "goldstein/errors.hpp"

namespace goldstein {
namespace {

using json = nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    std::size_t line = 1, column = 1;
    const std::size_t stop = e.byte == 0 ? 0 : std::min(e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError("parse error at line " + std::to_string(line) +
                     ", column " + std::to_string(column) + ": " + e.what());
  }
}

void require_object(const json& j, const std::string& where,
                    std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  for (const char* key : required) {
    if (!j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  }
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : required) known = known || key == k;
    for (const char* k : optional) known = known || key == k;
    if (!known) throw InputError(where + ": unknown field '" + key + "'");
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Vector vector_field(const json& j, const std::string& where) {
  const auto v = numbers(j, where);
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

}  // namespace

Objective parse_objective(std::string_view text) {
  const json root = parse_json(text);
  require_object(root, "problem", {"dim", "terms"}, {"Q", "b"});
  if (!root["dim"].is_number_integer()) {
    throw InputError("problem.dim: expected an integer");
  }
  const long dim = root["dim"].get<long>();
  if (dim < 1 || dim > kMaxDim) {
    throw InputError("problem.dim: must lie in [1, " + std::to_string(kMaxDim) + "]");
  }
  const int n = static_cast<int>(dim);

  Matrix q;
  if (root.contains("Q")) {
    const json& rows = root["Q"];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n)) {
      throw InputError("problem.Q: expected " + std::to_string(n) + " rows");
    }
    q.resize(n, n);
    for (int i = 0; i < n; ++i) {
      const std::string where = "problem.Q[" + std::to_string(i) + "]";
      const auto row = numbers(rows[i], where);
      if (row.size() != static_cast<std::size_t>(n)) {
        throw InputError(where + ": expected " + std::to_string(n) + " entries");
      }
      for (int k = 0; k < n; ++k) q(i, k) = row[k];
    }
  }
  Vector b;
  if (root.contains("b")) b = vector_field(root["b"], "problem.b");

  const json& jterms = root["terms"];
  if (!jterms.is_array()) throw InputError("problem.terms: expected an array");
  std::vector<SignedMaxAffine> terms;
  for (std::size_t j = 0; j < jterms.size(); ++j) {
    const std::string where = "problem.terms[" + std::to_string(j) + "]";
    require_object(jterms[j], where, {"sign", "pieces"});
    SignedMaxAffine term;
    if (!jterms[j]["sign"].is_number_integer()) {
      throw InputError(where + ".sign: expected 1 or -1");
    }
    term.sign = jterms[j]["sign"].get<int>();
    const json& jpieces = jterms[j]["pieces"];
    if (!jpieces.is_array()) throw InputError(where + ".pieces: expected an array");
    for (std::size_t i = 0; i < jpieces.size(); ++i) {
      const std::string pw = where + ".pieces[" + std::to_string(i) + "]";
      require_object(jpieces[i], pw, {"a", "beta"});
      term.pieces.push_back({vector_field(jpieces[i]["a"], pw + ".a"),
                             number(jpieces[i]["beta"], pw + ".beta")});
    }
    terms.push_back(std::move(term));
  }
  return Objective(n, std::move(q), std::move(b), std::move(terms));
}

Objective load_objective(const std::string& path) {
  return parse_objective(read_file(path));
}

std::string objective_to_json(const Objective& obj) {
  json root;
  root["dim"] = obj.dim();
  if (obj.has_quadratic()) {
    json rows = json::array();
    for (int i = 0; i < obj.dim(); ++i) rows.push_back(to_json(obj.quadratic().row(i).transpose()));
    root["Q"] = rows;
  }
  root["b"] = to_json(obj.linear());
  json terms = json::array();
  for (const auto& term : obj.terms()) {
    json pieces = json::array();
    for (const auto& piece : term.pieces) {
      pieces.push_back({{"a", to_json(piece.a)}, {"beta", piece.beta}});
    }
    terms.push_back({{"sign", term.sign}, {"pieces", pieces}});
  }
  root["terms"] = terms;
  return root.dump(2) + "\n";
}

PiecewiseLinear1D parse_piecewise_linear(std::string_view text) {
  const json root = parse_json(text);
  require_object(root, "piecewise_linear", {"breakpoints", "slopes", "value_at_left"});
  return PiecewiseLinear1D::from_slopes(
      numbers(root["breakpoints"], "piecewise_linear.breakpoints"),
      numbers(root["slopes"], "piecewise_linear.slopes"),
      number(root["value_at_left"], "piecewise_linear.value_at_left"));
}

PiecewiseLinear1D load_piecewise_linear(const std::string& path) {
  return parse_piecewise_linear(read_file(path));
}

std::string piecewise_linear_to_json(const PiecewiseLinear1D& h) {
  json root;
  root["breakpoints"] = h.breakpoints();
  root["slopes"] = h.slopes();
  root["value_at_left"] = h.value_at_left();
  return root.dump(2) + "\n";
}

CertificateFile parse_certificate(std::string_view text) {
  const json root = parse_json(text);
  require_object(root, "certificate", {"delta", "eps", "anchor", "aggregate", "atoms"});
  CertificateFile file;
  file.delta = number(root["delta"], "certificate.delta");
  file.eps = number(root["eps"], "certificate.eps");
  file.cert.anchor = vector_field(root["anchor"], "certificate.anchor");
  file.cert.aggregate = vector_field(root["aggregate"], "certificate.aggregate");
  const json& atoms = root["atoms"];
  if (!atoms.is_array()) throw InputError("certificate.atoms: expected an array");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string where = "certificate.atoms[" + std::to_string(i) + "]";
    require_object(atoms[i], where, {"weight", "point", "direction", "subgrad"});
    file.cert.atoms.push_back({number(atoms[i]["weight"], where + ".weight"),
                               vector_field(atoms[i]["point"], where + ".point"),
                               vector_field(atoms[i]["direction"], where + ".direction"),
                               vector_field(atoms[i]["subgrad"], where + ".subgrad")});
  }
  return file;
}

CertificateFile load_certificate(const std::string& path) {
  return parse_certificate(read_file(path));
}

std::string certificate_to_json(const CertificateFile& file) {
  json root;
  root["delta"] = file.delta;
  root["eps"] = file.eps;
  root["anchor"] = to_json(file.cert.anchor);
  root["aggregate"] = to_json(file.cert.aggregate);
  json atoms = json::array();
  for (const auto& atom : file.cert.atoms) {
    atoms.push_back({{"weight", atom.weight},
                     {"point", to_json(atom.point)},
                     {"direction", to_json(atom.direction)},
                     {"subgrad", to_json(atom.subgrad)}});
  }
  root["atoms"] = atoms;
  return root.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace goldstein
