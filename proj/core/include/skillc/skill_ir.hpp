#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skillc/ast.hpp"
#include "skillc/schema.hpp"

namespace skillc {

enum class SecurityLevel { low, medium, high, critical };

std::string_view to_string(SecurityLevel l);
std::optional<SecurityLevel> security_level_from(std::string_view s);

enum class PermissionKind { network, filesystem, process, database };

std::string_view to_string(PermissionKind k);
std::optional<PermissionKind> permission_kind_from(std::string_view s);

struct Permission {
  PermissionKind kind = PermissionKind::network;
  std::string scope;
  bool read_only = true;

  bool operator==(const Permission&) const = default;
};

struct Procedure {
  int order = 1;
  std::string instruction;
  bool is_critical = false;

  bool operator==(const Procedure&) const = default;
};

enum class ConstraintLevel { info, warning, error };

std::string_view to_string(ConstraintLevel l);
std::optional<ConstraintLevel> constraint_level_from(std::string_view s);

/// Protective constraint attached to the skill. `source` is the producing
/// analysis id ("anti-skill-injector" for injected rules) or the literal
/// "author" for constraints declared in the skill body.
struct AntiSkillConstraint {
  std::string source;
  std::string content;
  ConstraintLevel level = ConstraintLevel::warning;
  std::string scope = "global";

  bool operator==(const AntiSkillConstraint&) const = default;
};

inline constexpr char kInjectorSource[] = "anti-skill-injector";
inline constexpr char kAuthorSource[] = "author";

struct ExampleIR {
  std::string input_text;
  std::string output_text;

  bool operator==(const ExampleIR&) const = default;
};

struct CodeSnippet {
  std::string language_tag;
  std::string content;

  bool operator==(const CodeSnippet&) const = default;
};

enum class ExecutionMode { sequential, parallel };

std::string_view to_string(ExecutionMode m);

/// The framework-agnostic skill representation shared by every emission
/// target. Invariants: procedure orders are contiguous 1..k;
/// requires_yaml_optimization tracks detect_yaml_optimization(input_schema);
/// security_level high/critical forces hitl_required.
struct SkillIR {
  std::string name;
  std::string version;
  std::string description;
  std::vector<std::string> mcp_servers;
  std::optional<SchemaNode> input_schema;
  SecurityLevel security_level = SecurityLevel::low;
  bool hitl_required = false;
  std::vector<Permission> permissions;
  std::vector<Procedure> procedures;
  std::vector<AntiSkillConstraint> anti_skill_constraints;
  bool requires_yaml_optimization = false;
  ExecutionMode mode = ExecutionMode::sequential;
  std::vector<ExampleIR> examples;
  std::vector<CodeSnippet> code_blocks;
  std::optional<SecurityLevel> author_security_hint;
  std::string source_hash;

  bool operator==(const SkillIR&) const = default;
};

/// Phase-2 transform. Copies frontmatter fields, lifts classified blocks
/// into typed IR entries, and computes the nested-data flag. Security fields
/// start at their floor (low / no HITL); the optimizer overwrites them.
/// Throws SchemaValidationError on illegal field types.
SkillIR build_ir(const RawAst& ast);

/// Canonical IR JSON (stable field order, declaration-ordered maps, two-space
/// indent, trailing newline). Empty collections and absent optionals are
/// omitted; equal IRs serialize to identical bytes.
std::string serialize_ir(const SkillIR& ir);

/// Inverse of serialize_ir. Throws IrFormatError on malformed text.
SkillIR deserialize_ir(std::string_view text);

nlohmann::ordered_json ir_to_json(const SkillIR& ir);

}  // namespace skillc
