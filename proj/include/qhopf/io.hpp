#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "qhopf/datum.hpp"

namespace qhopf {

nlohmann::json field_to_json(const Field& field);
Field field_from_json(const nlohmann::json& j);

/// Scalars are decimal strings; plain JSON integers are accepted on input.
Scalar scalar_from_json(const nlohmann::json& j, const Field& field);

/// {"arity": k, "entries": [[[i1,...,ik], "scalar"], ...]} in key order.
nlohmann::json tensor_to_json(const SparseTensor& t);
SparseTensor tensor_from_json(const nlohmann::json& j, const Field& field, int dim,
                              int expected_arity = -1, const std::string& where = "tensor");

nlohmann::json to_json(const QuasiHopfDatum& d);
std::string save(const QuasiHopfDatum& d);

/// Throws ParseError for malformed documents and ShapeError for indices out of
/// range or wrong arities.
QuasiHopfDatum load(const nlohmann::json& document);
QuasiHopfDatum load_text(std::string_view text);
QuasiHopfDatum load_file(const std::string& path);

/// Parses JSON text, converting syntax errors into ParseError with line and
/// column.
nlohmann::json parse_json(std::string_view text);

}  // namespace qhopf
