#pragma once

// JSON payloads exchanged by the CLI. Matrices are
//   {"dim": n, "entries": [[re, im], ...]}   (row-major)
// and every double is written with 17 significant digits so files
// round-trip bit-exactly. Parsing goes through nlohmann::json.

#include <string>
#include <variant>

#include <json.hpp>

#include "mumd/criteria.hpp"
#include "mumd/mub.hpp"
#include "mumd/mum.hpp"
#include "mumd/operator_basis.hpp"
#include "mumd/states.hpp"

namespace mumd {

std::string format_double(double x);

std::string to_json(const ComplexMatrix& m);
// [{"n":..,"b":..,"dim":..,"entries":..}, ...] in flat order
std::string to_json(const OperatorBasis& basis);
// [matrix, ...], one unitary per basis
std::string to_json(const BasisSet& set);
// {"d":..,"kappa":..,"t":x|null,"elements":[[matrix,...],...]} indexed [b-1][n-1]
std::string to_json(const MumSet& set);
// {"d":..,"rho":matrix}
std::string to_json(const BipartiteState& state);
// {"criterion","value","bound","verdict","kappa","d","tolerance"}
std::string to_json(const DetectionReport& report);
std::string to_json(const PptResult& ppt);

ComplexMatrix matrix_from_json(const nlohmann::json& j);
OperatorBasis operator_basis_from_json(const nlohmann::json& j);
BasisSet basis_set_from_json(const nlohmann::json& j);
MumSet mum_set_from_json(const nlohmann::json& j);
// Validates density-matrix invariants unless validate is false.
BipartiteState state_from_json(const nlohmann::json& j, bool validate = true);

using Payload = std::variant<ComplexMatrix, OperatorBasis, BasisSet, MumSet, BipartiteState>;

// Dispatches on shape: object with "elements" -> MumSet, with "rho" ->
// state, with "dim" -> matrix; array of labelled matrices -> OperatorBasis,
// array of plain matrices -> BasisSet.
Payload parse_payload(const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace mumd
