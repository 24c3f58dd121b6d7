#include "spec_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <qdf/error.hpp>

namespace qdf::cli {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw SpecError(what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) invalid(where + ": missing \"" + key + "\"");
  return *it;
}

Index integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) invalid(where + ": expected an integer");
  return j.get<Index>();
}

Complex complex_value(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  invalid(where + ": expected a number or [re, im]");
}

Json complex_to_json(Complex c) {
  if (c.imag() == 0.0) return c.real();
  return Json::array({c.real(), c.imag()});
}

std::vector<Index> integer_list(const Json& j, const std::string& where) {
  if (!j.is_array()) invalid(where + ": expected a list of integers");
  std::vector<Index> out;
  for (const auto& v : j) out.push_back(integer(v, where));
  return out;
}

WeightFormula weight_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) invalid(where + ": weight must be a string");
  try {
    return WeightFormula::parse(j.get<std::string>());
  } catch (const Error& e) {
    invalid(where + ": " + e.what());
  }
}

bool has_weight(OperatorKind kind) {
  return kind == OperatorKind::weighted_shift || kind == OperatorKind::adjoint_weighted_shift ||
         kind == OperatorKind::diagonal || kind == OperatorKind::dilation_shift;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

void require_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) invalid(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!known) invalid(where + ": unknown field \"" + key + "\"");
  }
}

OperatorSpec operator_from_json(const Json& j) {
  const std::string where = "operator";
  if (!j.is_object()) invalid(where + ": expected an object");
  const Json& kind_field = field(j, "kind", where);
  if (!kind_field.is_string()) invalid(where + ": \"kind\" must be a string");
  const auto kind = parse_kind(kind_field.get<std::string>());
  if (!kind) invalid(where + ": unknown kind \"" + kind_field.get<std::string>() + "\"");
  const std::string here = where + " " + kind_field.get<std::string>();

  try {
    switch (*kind) {
      case OperatorKind::weighted_shift:
      case OperatorKind::adjoint_weighted_shift:
      case OperatorKind::diagonal: {
        require_keys(j, {"kind", "weight"}, here);
        const WeightFormula w = weight_from_json(field(j, "weight", here), here);
        if (*kind == OperatorKind::weighted_shift) return OperatorSpec::weighted_shift(w);
        if (*kind == OperatorKind::adjoint_weighted_shift) return OperatorSpec::adjoint_weighted_shift(w);
        return OperatorSpec::diagonal(w);
      }
      case OperatorKind::dilation_shift:
        require_keys(j, {"kind", "weight"}, here);
        return j.contains("weight") ? OperatorSpec::dilation_shift(weight_from_json(j["weight"], here))
                                    : OperatorSpec::dilation_shift();
      case OperatorKind::example_A:
        require_keys(j, {"kind"}, here);
        return OperatorSpec::example_a();
      case OperatorKind::hermite_q:
        require_keys(j, {"kind"}, here);
        return OperatorSpec::hermite_q();
      case OperatorKind::hermite_p:
        require_keys(j, {"kind"}, here);
        return OperatorSpec::hermite_p();
      case OperatorKind::creation:
        require_keys(j, {"kind"}, here);
        return OperatorSpec::creation();
      case OperatorKind::annihilation:
        require_keys(j, {"kind"}, here);
        return OperatorSpec::annihilation();
      case OperatorKind::toeplitz: {
        require_keys(j, {"kind", "band"}, here);
        const Json& band = field(j, "band", here);
        if (!band.is_object() || band.empty()) invalid(here + ": \"band\" must be a nonempty object");
        std::map<long, Complex> coefficients;
        for (const auto& [key, value] : band.items()) {
          long offset = 0;
          const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), offset);
          if (ec != std::errc() || ptr != key.data() + key.size()) invalid(here + ": band offset \"" + key + "\" is not an integer");
          coefficients[offset] = complex_value(value, here + " band " + key);
        }
        return OperatorSpec::toeplitz(std::move(coefficients));
      }
      case OperatorKind::sum:
      case OperatorKind::product: {
        const char* key = *kind == OperatorKind::sum ? "terms" : "factors";
        require_keys(j, {"kind", key}, here);
        const Json& list = field(j, key, here);
        if (!list.is_array() || list.empty()) invalid(here + ": \"" + key + "\" must be a nonempty list");
        std::vector<OperatorSpec> children;
        for (const auto& child : list) children.push_back(operator_from_json(child));
        return *kind == OperatorKind::sum ? OperatorSpec::sum(std::move(children))
                                          : OperatorSpec::product(std::move(children));
      }
      case OperatorKind::scale:
        require_keys(j, {"kind", "factor", "operand"}, here);
        return OperatorSpec::scale(complex_value(field(j, "factor", here), here + " factor"),
                                   operator_from_json(field(j, "operand", here)));
    }
  } catch (const Error& e) {
    invalid(here + ": " + e.what());
  }
  invalid(here + ": unsupported kind");
}

Json operator_to_json(const OperatorSpec& op) {
  Json j{{"kind", std::string(kind_name(op.kind()))}};
  if (has_weight(op.kind())) j["weight"] = op.weight().to_string();
  switch (op.kind()) {
    case OperatorKind::toeplitz: {
      Json band = Json::object();
      for (const auto& [offset, c] : op.band()) band[std::to_string(offset)] = complex_to_json(c);
      j["band"] = band;
      break;
    }
    case OperatorKind::sum:
    case OperatorKind::product: {
      Json list = Json::array();
      for (const auto& child : op.children()) list.push_back(operator_to_json(child));
      j[op.kind() == OperatorKind::sum ? "terms" : "factors"] = list;
      break;
    }
    case OperatorKind::scale:
      j["factor"] = complex_to_json(op.factor());
      j["operand"] = operator_to_json(op.children().front());
      break;
    default:
      break;
  }
  return j;
}

IndexSequence selector_from_json(const Json& j) {
  const std::string where = "selector";
  if (!j.is_object()) invalid(where + ": expected an object");
  const Json& rule = field(j, "rule", where);
  if (!rule.is_string()) invalid(where + ": \"rule\" must be a string");
  const std::string name = rule.get<std::string>();
  try {
    if (name == "geometric") {
      require_keys(j, {"rule", "base"}, where);
      return IndexSequence::geometric(integer(field(j, "base", where), where));
    }
    if (name == "polynomial") {
      require_keys(j, {"rule", "exponent"}, where);
      return IndexSequence::polynomial(integer(field(j, "exponent", where), where));
    }
    if (name == "affine") {
      require_keys(j, {"rule", "slope", "offset"}, where);
      return IndexSequence::affine(integer(field(j, "slope", where), where), integer(field(j, "offset", where), where));
    }
    if (name == "list") {
      require_keys(j, {"rule", "values"}, where);
      return IndexSequence::list(integer_list(field(j, "values", where), where));
    }
  } catch (const Error& e) {
    invalid(where + ": " + e.what());
  }
  invalid(where + ": unknown rule \"" + name + "\"");
}

Json selector_to_json(const IndexSequence& s) {
  switch (s.rule()) {
    case IndexSequence::Rule::geometric:
      return {{"rule", "geometric"}, {"base", s.first_param()}};
    case IndexSequence::Rule::polynomial:
      return {{"rule", "polynomial"}, {"exponent", s.first_param()}};
    case IndexSequence::Rule::affine:
      return {{"rule", "affine"}, {"slope", s.first_param()}, {"offset", s.second_param()}};
    case IndexSequence::Rule::list:
      return {{"rule", "list"}, {"values", s.values()}};
  }
  return {};
}

ProjectionFamily family_from_json(const Json& j) {
  const std::string where = "projection";
  if (!j.is_object()) invalid(where + ": expected an object");
  const Json& kind = field(j, "kind", where);
  if (!kind.is_string()) invalid(where + ": \"kind\" must be a string");
  const std::string name = kind.get<std::string>();
  try {
    if (name == "canonical") {
      require_keys(j, {"kind"}, where);
      return ProjectionFamily::canonical();
    }
    if (name == "sparse") {
      require_keys(j, {"kind", "selector"}, where);
      return ProjectionFamily::sparse(selector_from_json(field(j, "selector", where)));
    }
    if (name == "blocks") {
      require_keys(j, {"kind", "boundaries", "selector"}, where);
      const Json& b = field(j, "boundaries", where);
      BoundarySequence boundaries = BoundarySequence::unit();
      if (b.is_string()) {
        if (b.get<std::string>() != "unit") invalid(where + ": boundaries must be \"unit\" or a list");
      } else {
        boundaries = BoundarySequence::list(integer_list(b, where + " boundaries"));
      }
      std::optional<IndexSequence> selector;
      if (j.contains("selector")) selector = selector_from_json(j["selector"]);
      return ProjectionFamily::blocks(std::move(boundaries), std::move(selector));
    }
  } catch (const Error& e) {
    invalid(where + ": " + e.what());
  }
  invalid(where + ": unknown kind \"" + name + "\"");
}

Json family_to_json(const ProjectionFamily& family) {
  switch (family.kind()) {
    case FamilyKind::canonical:
      return {{"kind", "canonical"}};
    case FamilyKind::sparse:
      return {{"kind", "sparse"}, {"selector", selector_to_json(*family.selector())}};
    case FamilyKind::blocks: {
      Json j{{"kind", "blocks"}};
      if (family.boundaries().is_unit()) {
        j["boundaries"] = "unit";
      } else {
        Json list = Json::array({0});
        for (Index b : family.boundaries().values()) list.push_back(b);
        j["boundaries"] = list;
      }
      if (family.selector()) j["selector"] = selector_to_json(*family.selector());
      return j;
    }
    case FamilyKind::explicit_bases:
      throw SpecError("explicit projection families have no file representation");
  }
  return {};
}

SpecFile parse_spec(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
  require_keys(doc, {"operator", "projection", "experiment"}, "spec");
  SpecFile spec;
  if (doc.contains("operator")) spec.op = operator_from_json(doc["operator"]);
  if (doc.contains("projection")) spec.family = family_from_json(doc["projection"]);
  if (doc.contains("experiment")) {
    if (!doc["experiment"].is_object()) invalid("experiment: expected an object");
    spec.experiment = doc["experiment"];
  }
  return spec;
}

SpecFile load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot read spec file \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spec(buffer.str());
}

Json to_json(const SpecFile& spec) {
  Json j = Json::object();
  if (spec.op) j["operator"] = operator_to_json(*spec.op);
  if (spec.family) j["projection"] = family_to_json(*spec.family);
  if (!spec.experiment.empty()) j["experiment"] = spec.experiment;
  return j;
}

std::string spec_hash(const SpecFile& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json(spec).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return hex64(h);
}

}  // namespace qdf::cli
