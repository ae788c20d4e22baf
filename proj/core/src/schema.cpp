#include "skillc/schema.hpp"

#include <algorithm>

#include "skillc/errors.hpp"

namespace skillc {

std::string_view to_string(SchemaKind k) {
  switch (k) {
    case SchemaKind::object: return "object";
    case SchemaKind::array: return "array";
    case SchemaKind::string: return "string";
    case SchemaKind::number: return "number";
    case SchemaKind::integer: return "integer";
    case SchemaKind::boolean: return "boolean";
    case SchemaKind::null_value: return "null";
  }
  return "string";
}

std::optional<SchemaKind> schema_kind_from(std::string_view s) {
  if (s == "object") return SchemaKind::object;
  if (s == "array") return SchemaKind::array;
  if (s == "string") return SchemaKind::string;
  if (s == "number") return SchemaKind::number;
  if (s == "integer") return SchemaKind::integer;
  if (s == "boolean") return SchemaKind::boolean;
  if (s == "null") return SchemaKind::null_value;
  return std::nullopt;
}

namespace {

[[noreturn]] void fail_type(const std::string& message, const std::optional<Span>& origin) {
  Diagnostic d = make_diag(codes::kSchemaType, Severity::fatal, message);
  d.span = origin;
  throw SchemaValidationError(std::move(d));
}

}  // namespace

SchemaNode schema_from_json(const nlohmann::ordered_json& value, const std::optional<Span>& origin) {
  if (!value.is_object()) {
    fail_type("schema node must be a JSON object", origin);
  }
  const auto type_it = value.find("type");
  if (type_it == value.end() || !type_it->is_string()) {
    fail_type("schema node is missing a string 'type'", origin);
  }
  const auto kind = schema_kind_from(type_it->get<std::string>());
  if (!kind) {
    fail_type("unknown schema type '" + type_it->get<std::string>() + "'", origin);
  }

  SchemaNode node;
  node.kind = *kind;

  if (const auto props = value.find("properties"); props != value.end()) {
    if (node.kind != SchemaKind::object) {
      fail_type("'properties' is only valid on object schemas", origin);
    }
    if (!props->is_object()) {
      fail_type("'properties' must be a JSON object", origin);
    }
    for (const auto& [name, child] : props->items()) {
      node.properties.emplace_back(name, schema_from_json(child, origin));
    }
  }
  if (const auto items = value.find("items"); items != value.end()) {
    if (node.kind != SchemaKind::array) {
      fail_type("'items' is only valid on array schemas", origin);
    }
    node.items.push_back(schema_from_json(*items, origin));
  }
  if (const auto en = value.find("enum"); en != value.end()) {
    if (node.kind != SchemaKind::string || !en->is_array()) {
      fail_type("'enum' is only supported as a string list on string schemas", origin);
    }
    for (const auto& entry : *en) {
      if (!entry.is_string()) {
        fail_type("'enum' entries must be strings", origin);
      }
      node.enum_values.push_back(entry.get<std::string>());
    }
  }
  return node;
}

SchemaNode parse_schema_json(std::string_view raw_json, const std::optional<Span>& origin) {
  nlohmann::ordered_json value;
  try {
    value = nlohmann::ordered_json::parse(raw_json);
  } catch (const nlohmann::json::parse_error& e) {
    Diagnostic d = make_diag(codes::kSchemaJson, Severity::fatal,
                             std::string("schema block is not valid JSON: ") + e.what());
    d.span = origin;
    throw SchemaValidationError(std::move(d));
  }
  return schema_from_json(value, origin);
}

nlohmann::ordered_json schema_to_json(const SchemaNode& node) {
  nlohmann::ordered_json out;
  out["type"] = std::string(to_string(node.kind));
  if (!node.properties.empty()) {
    nlohmann::ordered_json props;
    for (const auto& [name, child] : node.properties) {
      props[name] = schema_to_json(child);
    }
    out["properties"] = std::move(props);
  }
  if (!node.items.empty()) {
    out["items"] = schema_to_json(node.items.front());
  }
  if (!node.enum_values.empty()) {
    out["enum"] = node.enum_values;
  }
  return out;
}

int max_nesting_depth(const SchemaNode& node) {
  int deepest_child = 0;
  for (const auto& [name, child] : node.properties) {
    deepest_child = std::max(deepest_child, max_nesting_depth(child));
  }
  for (const auto& child : node.items) {
    deepest_child = std::max(deepest_child, max_nesting_depth(child));
  }
  return 1 + deepest_child;
}

bool detect_yaml_optimization(const std::optional<SchemaNode>& schema) {
  return schema.has_value() && max_nesting_depth(*schema) >= kYamlOptimizationDepth;
}

}  // namespace skillc
