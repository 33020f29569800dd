#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "reflecto/matrix.hpp"
#include "reflecto/network.hpp"
#include "reflecto/tightness.hpp"

namespace reflecto {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON document. Throws ParseError with the path.
Json read_json_file(const std::filesystem::path& path);

/// Rationals are canonical strings; plain JSON integers are also accepted
/// on input. Floats never are.
Rational rational_from_json(const Json& j, const std::string& where);
Json to_json(const Rational& r);
Json to_json(const RatVector& v);
Json to_json(const RatMatrix& m);
RatVector vector_from_json(const Json& j, const std::string& where);
RatMatrix matrix_from_json(const Json& j, const std::string& where);

/// Network document with 1-based station ids and priority levels.
/// Unknown fields are rejected.
NetworkSpec spec_from_json(const Json& j);
Json spec_to_json(const NetworkSpec& spec);

struct MatrixFile {
  RatMatrix matrix;
  std::optional<RatVector> b;
};

/// {"matrix": [[...]], "b": [...]} with a square matrix and positive b.
MatrixFile matrix_file_from_json(const Json& j);

/// Object keyed by VarIndex::key() with rational string values.
Json witness_to_json(const Assignment& a);
Assignment witness_from_json(const Json& j);

}  // namespace reflecto
