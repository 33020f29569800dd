#include "reflecto/io.hpp"

#include <fstream>
#include <set>

#include "reflecto/errors.hpp"

namespace reflecto {

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return rat_parse(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw ParseError(where + ": expected a rational string");
}

Json to_json(const Rational& r) { return r.to_string(); }

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(r.to_string());
  return out;
}

Json to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out.push_back(to_json(RatVector(m.row(i).begin(), m.row(i).end())));
  }
  return out;
}

RatVector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  RatVector out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(rational_from_json(j[k], where + "[" + std::to_string(k + 1) + "]"));
  }
  return out;
}

RatMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of rows");
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vector_from_json(j[i], where + "[" + std::to_string(i + 1) + "]"));
  }
  try {
    return RatMatrix::from_rows(rows);
  } catch (const DimensionError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& known,
                    const std::string& what) {
  if (!j.is_object()) throw ParseError(what + ": expected a JSON object");
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw ParseError(what + ": unknown field '" + item.key() + "'");
    }
  }
}

const Json& field(const Json& j, const char* name) {
  if (!j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::size_t positive_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 1) {
    throw ParseError(where + ": expected a positive integer");
  }
  return static_cast<std::size_t>(j.get<std::int64_t>());
}

}  // namespace

NetworkSpec spec_from_json(const Json& j) {
  reject_unknown(j,
                 {"classes", "stations", "station_of_class", "priority",
                  "service_means", "arrival_rates", "routing"},
                 "network spec");
  NetworkSpec spec;
  spec.classes = positive_int(field(j, "classes"), "classes");
  spec.stations = positive_int(field(j, "stations"), "stations");
  const Json& soc = field(j, "station_of_class");
  if (!soc.is_array()) throw ParseError("station_of_class: expected an array");
  for (std::size_t k = 0; k < soc.size(); ++k) {
    spec.station_of_class.push_back(
        positive_int(soc[k], "station_of_class[" + std::to_string(k + 1) + "]") - 1);
  }
  const Json& pri = field(j, "priority");
  if (!pri.is_array()) throw ParseError("priority: expected an array");
  for (std::size_t k = 0; k < pri.size(); ++k) {
    spec.priority.push_back(positive_int(pri[k], "priority[" + std::to_string(k + 1) + "]"));
  }
  spec.service_means = vector_from_json(field(j, "service_means"), "service_means");
  spec.arrival_rates = vector_from_json(field(j, "arrival_rates"), "arrival_rates");
  spec.routing = matrix_from_json(field(j, "routing"), "routing");
  if (spec.routing.rows() == 0 && spec.classes > 0) {
    throw ParseError("routing: empty matrix");
  }
  return spec;
}

Json spec_to_json(const NetworkSpec& spec) {
  Json out;
  out["classes"] = spec.classes;
  out["stations"] = spec.stations;
  Json soc = Json::array();
  for (std::size_t s : spec.station_of_class) soc.push_back(s + 1);
  out["station_of_class"] = soc;
  out["priority"] = spec.priority;
  out["service_means"] = to_json(spec.service_means);
  out["arrival_rates"] = to_json(spec.arrival_rates);
  out["routing"] = to_json(spec.routing);
  return out;
}

MatrixFile matrix_file_from_json(const Json& j) {
  reject_unknown(j, {"matrix", "b"}, "matrix file");
  MatrixFile out;
  out.matrix = matrix_from_json(field(j, "matrix"), "matrix");
  if (out.matrix.rows() == 0 || !out.matrix.is_square()) {
    throw ParseError("matrix: must be nonempty and square");
  }
  if (j.contains("b")) {
    RatVector b = vector_from_json(j.at("b"), "b");
    if (b.size() != out.matrix.rows()) {
      throw ParseError("b: length " + std::to_string(b.size()) +
                       " does not match dimension " + std::to_string(out.matrix.rows()));
    }
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (!b[k].is_positive()) {
        throw ParseError("b[" + std::to_string(k + 1) + "]: must be positive");
      }
    }
    out.b = std::move(b);
  }
  return out;
}

Json witness_to_json(const Assignment& a) {
  Json out = Json::object();
  for (const auto& [var, value] : a) out[var.key()] = value.to_string();
  return out;
}

Assignment witness_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("witness: expected a JSON object");
  Assignment a;
  for (const auto& item : j.items()) {
    const VarIndex var = parse_var_key(item.key());
    if (!a.emplace(var, rational_from_json(item.value(), item.key())).second) {
      throw ParseError("witness: duplicate key " + item.key());
    }
  }
  return a;
}

}  // namespace reflecto
