#include "mumd/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mumd/error.hpp"

namespace mumd {

namespace {

using nlohmann::json;

int int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw ValidationError(std::string("malformed payload: missing integer field '") + key + "'");
  }
  return j.at(key).get<int>();
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ValidationError(std::string("malformed payload: missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

bool looks_like_matrix(const json& j) { return j.is_object() && j.contains("dim") && j.contains("entries"); }

void append_matrix_body(std::string& out, const ComplexMatrix& m) {
  out += "\"dim\":" + std::to_string(m.dim()) + ",\"entries\":[";
  bool first = true;
  for (const Complex& z : m.entries()) {
    if (!first) out += ',';
    first = false;
    out += '[' + format_double(z.real()) + ',' + format_double(z.imag()) + ']';
  }
  out += ']';
}

std::string optional_number(const std::optional<double>& x) { return x ? format_double(*x) : "null"; }

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) throw InvariantError("format_double: non-finite value");
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_json(const ComplexMatrix& m) {
  std::string out = "{";
  append_matrix_body(out, m);
  return out + '}';
}

std::string to_json(const OperatorBasis& basis) {
  std::string out = "[";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (i) out += ",\n ";
    const GridIndex g = basis.grid_index(i);
    out += "{\"n\":" + std::to_string(g.n) + ",\"b\":" + std::to_string(g.b) + ',';
    append_matrix_body(out, basis[i]);
    out += '}';
  }
  return out + ']';
}

std::string to_json(const BasisSet& set) {
  std::string out = "[";
  for (std::size_t i = 0; i < set.bases.size(); ++i) {
    if (i) out += ",\n ";
    out += to_json(set.bases[i]);
  }
  return out + ']';
}

std::string to_json(const MumSet& set) {
  std::string out = "{\"d\":" + std::to_string(set.d) + ",\"kappa\":" + format_double(set.kappa) +
                    ",\"t\":" + optional_number(set.t) + ",\"elements\":[";
  for (std::size_t b = 0; b < set.elements.size(); ++b) {
    out += b ? ",\n [" : "\n [";
    for (std::size_t n = 0; n < set.elements[b].size(); ++n) {
      if (n) out += ',';
      out += to_json(set.elements[b][n]);
    }
    out += ']';
  }
  return out + "]}";
}

std::string to_json(const BipartiteState& state) {
  return "{\"d\":" + std::to_string(state.d) + ",\"rho\":" + to_json(state.rho) + '}';
}

std::string to_json(const DetectionReport& r) {
  return "{\"criterion\":\"" + r.criterion + "\",\"value\":" + format_double(r.value) +
         ",\"bound\":" + format_double(r.bound) + ",\"verdict\":\"" + to_string(r.verdict) +
         "\",\"kappa\":" + optional_number(r.kappa) + ",\"d\":" + std::to_string(r.d) +
         ",\"tolerance\":" + format_double(r.tolerance) + '}';
}

std::string to_json(const PptResult& ppt) {
  return "{\"min_eigenvalue\":" + format_double(ppt.min_eigenvalue) +
         ",\"is_ppt\":" + (ppt.is_ppt ? "true" : "false") + '}';
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!looks_like_matrix(j)) throw ValidationError("malformed payload: expected a matrix object");
  const int dim = int_field(j, "dim");
  if (dim < 1) throw ValidationError("malformed payload: matrix dim must be positive");
  const json& entries = j.at("entries");
  if (!entries.is_array()) throw ValidationError("malformed payload: 'entries' must be an array");
  std::vector<Complex> values;
  values.reserve(entries.size());
  for (const json& e : entries) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ValidationError("malformed payload: matrix entry must be [re, im]");
    }
    values.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return ComplexMatrix(static_cast<std::size_t>(dim), std::move(values));
}

OperatorBasis operator_basis_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("malformed payload: expected an operator basis array");
  std::vector<ComplexMatrix> elements;
  for (const json& e : j) elements.push_back(matrix_from_json(e));
  const int d = static_cast<int>(elements.front().dim());
  OperatorBasis basis(d, std::move(elements));
  // Labels are informational; the grid is the canonical assignment.
  if (basis.size() == static_cast<std::size_t>(d * d - 1)) basis = assign_grid(std::move(basis));
  return basis;
}

BasisSet basis_set_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("malformed payload: expected a basis-set array");
  BasisSet set;
  for (const json& e : j) set.bases.push_back(matrix_from_json(e));
  set.d = static_cast<int>(set.bases.front().dim());
  return set;
}

MumSet mum_set_from_json(const json& j) {
  if (!j.is_object() || !j.contains("elements")) throw ValidationError("malformed payload: expected a MUM set");
  MumSet set;
  set.d = int_field(j, "d");
  set.kappa = number_field(j, "kappa");
  if (j.contains("t") && !j.at("t").is_null()) set.t = number_field(j, "t");
  const json& rows = j.at("elements");
  if (!rows.is_array()) throw ValidationError("malformed payload: 'elements' must be an array");
  for (const json& row : rows) {
    if (!row.is_array()) throw ValidationError("malformed payload: MUM row must be an array");
    std::vector<ComplexMatrix> povm;
    for (const json& e : row) povm.push_back(matrix_from_json(e));
    set.elements.push_back(std::move(povm));
  }
  return set;
}

BipartiteState state_from_json(const json& j, bool validate) {
  if (!j.is_object() || !j.contains("rho")) throw ValidationError("malformed payload: expected a state");
  const int d = int_field(j, "d");
  ComplexMatrix rho = matrix_from_json(j.at("rho"));
  if (!validate) return {d, std::move(rho)};
  return make_state(d, std::move(rho));
}

Payload parse_payload(const json& j) {
  if (j.is_object()) {
    if (j.contains("elements")) return mum_set_from_json(j);
    if (j.contains("rho")) return state_from_json(j, false);
    if (looks_like_matrix(j)) return matrix_from_json(j);
  } else if (j.is_array() && !j.empty()) {
    if (j.front().is_object() && j.front().contains("n") && j.front().contains("b")) {
      return operator_basis_from_json(j);
    }
    return basis_set_from_json(j);
  }
  throw ValidationError("malformed payload: unrecognized JSON shape");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace mumd
