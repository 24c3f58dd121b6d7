#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include <qdf/projection_family.hpp>
#include <qdf/operator_spec.hpp>

namespace qdf::cli {

using Json = nlohmann::json;

/// Malformed or schema-violating spec file (exit code 2).
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpecFile {
  std::optional<OperatorSpec> op;
  std::optional<ProjectionFamily> family;
  Json experiment = Json::object();
};

/// Parses and strictly validates a spec document; throws SpecError.
SpecFile parse_spec(const std::string& text);
SpecFile load_spec_file(const std::string& path);

Json to_json(const SpecFile& spec);
Json operator_to_json(const OperatorSpec& op);
OperatorSpec operator_from_json(const Json& j);
Json family_to_json(const ProjectionFamily& family);
ProjectionFamily family_from_json(const Json& j);
Json selector_to_json(const IndexSequence& s);
IndexSequence selector_from_json(const Json& j);

/// FNV-1a 64-bit hash of the canonical serialization, as 16 hex digits.
std::string spec_hash(const SpecFile& spec);

/// Rejects keys outside `allowed` in an object; `where` names it in messages.
void require_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where);

}  // namespace qdf::cli
