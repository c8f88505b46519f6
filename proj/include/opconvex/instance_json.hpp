#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "opconvex/support.hpp"

namespace opconvex {

using Json = nlohmann::json;

/// An instance file: a carrier with its operation family, an optional ordered
/// range, named sets / functions / cones, and task-specific blocks kept raw
/// until a subcommand binds them.
struct InstanceDocument {
  std::string schema_version;
  OperationFamily family;
  std::optional<OrderedRange> range;
  std::map<std::string, Subset> sets;
  std::map<std::string, Json> functions;
  std::map<std::string, RationalCone> cones;
  Json tasks;  // object holding "support" / "subadditive" / "sublinear" / "mt2" / "ri" / "delta"
};

/// Parses and validates; schema violations raise Errc::schema_error with a
/// JSON-path-labeled message.
InstanceDocument parse_instance(const std::string& text);

/// Semantic serialization (sets, tables and cones re-emitted canonically);
/// parse(serialize(doc)) reproduces the same document.
Json serialize_instance(const InstanceDocument& doc);

const Subset& named_set(const InstanceDocument& doc, const std::string& name);
const RationalCone& named_cone(const InstanceDocument& doc, const std::string& name);

/// Binds a named function block against the document's range flavor.
FunctionTable materialize_function(const InstanceDocument& doc, const std::string& name);
std::vector<Rational> materialize_scalar_function(const InstanceDocument& doc,
                                                  const std::string& name);

// json <-> exact values
Rational rational_from_json(const Json& j, const std::string& path);
Json rational_to_json(const Rational& q);
VecQ vec_from_json(const Json& j, const std::string& path);
Json vec_to_json(const VecQ& v);
MatQ mat_from_json(const Json& j, const std::string& path);
Json mat_to_json(const MatQ& m);
LpRow row_from_json(const Json& j, const std::string& path);
Json subset_to_json(const Subset& s);

}  // namespace opconvex
