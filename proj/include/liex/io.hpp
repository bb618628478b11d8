#pragma once

#include "liex/basis_change.hpp"
#include "liex/casimir.hpp"
#include "liex/classify.hpp"
#include "liex/extension.hpp"

#include <json.hpp>
#include <string>
#include <vector>

namespace liex {

using Json = nlohmann::ordered_json;

// {"n": order, "semidirect": flag, "w": [[[scalar]]]} plus any metadata keys, kept in order
struct TensorDocument {
    ExtensionTensor tensor;
    Json meta = Json::object();
};

Json to_json(const ExtensionTensor& t);
Json to_json(const TensorDocument& doc);
// shape and scalar syntax are checked; the Lie laws are not
TensorDocument document_from_json(const Json& j);
TensorDocument read_document(const std::string& path);

Json to_json(const BasisChange& b);
BasisChange basis_change_from_json(const Json& j);
Json to_json(const std::vector<BasisChange>& chain);
std::vector<BasisChange> chain_from_json(const Json& j);

Json to_json(const CasimirFamily& fam);
CasimirFamily family_from_json(const Json& j);

Json to_json(const ExactMatrix& m);
ExactMatrix matrix_from_json(const Json& j);

// throws ParseError for missing, empty or malformed files
Json read_json_file(const std::string& path);

// LIEX_FIXTURES or the build-time default
std::string fixtures_dir();

}  // namespace liex
