#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "skillc/diagnostics.hpp"

namespace skillc {

enum class SchemaKind { object, array, string, number, integer, boolean, null_value };

std::string_view to_string(SchemaKind k);
std::optional<SchemaKind> schema_kind_from(std::string_view s);

/// Finite schema tree. `properties` is populated only for object nodes and
/// keeps declaration order; `items` holds at most one node and only for
/// array nodes; `enum_values` is meaningful for string nodes.
struct SchemaNode {
  SchemaKind kind = SchemaKind::string;
  std::vector<std::pair<std::string, SchemaNode>> properties;
  std::vector<SchemaNode> items;
  std::vector<std::string> enum_values;

  bool operator==(const SchemaNode&) const = default;
};

/// Parses a schema block's JSON text into a SchemaNode. Property order is
/// preserved. Throws SchemaValidationError (SCHEMA_JSON on malformed JSON,
/// SCHEMA_TYPE on unknown `type` values or misplaced properties/items/enum);
/// `origin`, when given, is attached to the diagnostic.
SchemaNode parse_schema_json(std::string_view raw_json, const std::optional<Span>& origin = std::nullopt);

nlohmann::ordered_json schema_to_json(const SchemaNode& node);
SchemaNode schema_from_json(const nlohmann::ordered_json& value,
                            const std::optional<Span>& origin = std::nullopt);

/// Depth of a scalar is 1; an object is 1 + the deepest property (1 with no
/// properties); an array is 1 + the depth of its items.
int max_nesting_depth(const SchemaNode& node);

/// True iff a schema is present and nests to depth >= 3; emitters that
/// support compact rendering consult this flag.
bool detect_yaml_optimization(const std::optional<SchemaNode>& schema);

inline constexpr int kYamlOptimizationDepth = 3;

}  // namespace skillc
