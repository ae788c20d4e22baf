#include "skillc/skill_ir.hpp"

#include <algorithm>
#include <cctype>

#include "skillc/errors.hpp"
#include "skillc/frontend.hpp"

namespace skillc {

std::string_view to_string(SecurityLevel l) {
  switch (l) {
    case SecurityLevel::low: return "low";
    case SecurityLevel::medium: return "medium";
    case SecurityLevel::high: return "high";
    case SecurityLevel::critical: return "critical";
  }
  return "low";
}

std::optional<SecurityLevel> security_level_from(std::string_view s) {
  if (s == "low") return SecurityLevel::low;
  if (s == "medium") return SecurityLevel::medium;
  if (s == "high") return SecurityLevel::high;
  if (s == "critical") return SecurityLevel::critical;
  return std::nullopt;
}

std::string_view to_string(PermissionKind k) {
  switch (k) {
    case PermissionKind::network: return "network";
    case PermissionKind::filesystem: return "filesystem";
    case PermissionKind::process: return "process";
    case PermissionKind::database: return "database";
  }
  return "network";
}

std::optional<PermissionKind> permission_kind_from(std::string_view s) {
  if (s == "network") return PermissionKind::network;
  if (s == "filesystem") return PermissionKind::filesystem;
  if (s == "process") return PermissionKind::process;
  if (s == "database") return PermissionKind::database;
  return std::nullopt;
}

std::string_view to_string(ConstraintLevel l) {
  switch (l) {
    case ConstraintLevel::info: return "info";
    case ConstraintLevel::warning: return "warning";
    case ConstraintLevel::error: return "error";
  }
  return "warning";
}

std::optional<ConstraintLevel> constraint_level_from(std::string_view s) {
  if (s == "info") return ConstraintLevel::info;
  if (s == "warning") return ConstraintLevel::warning;
  if (s == "error") return ConstraintLevel::error;
  return std::nullopt;
}

std::string_view to_string(ExecutionMode m) {
  return m == ExecutionMode::parallel ? "parallel" : "sequential";
}

namespace {

[[noreturn]] void fail_type(const std::string& message, std::optional<Span> span = std::nullopt) {
  Diagnostic d = make_diag(codes::kSchemaType, Severity::fatal, message);
  d.span = std::move(span);
  throw SchemaValidationError(std::move(d));
}

std::string_view strip_list_marker(std::string_view text) {
  auto trim_front = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
  };
  std::string_view s = trim_front(text);
  if (s.size() >= 2 && (s[0] == '-' || s[0] == '*' || s[0] == '+') && s[1] == ' ') {
    return trim_front(s.substr(2));
  }
  std::size_t digits = 0;
  while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
  if (digits > 0 && digits < s.size() && (s[digits] == '.' || s[digits] == ')')) {
    std::string_view rest = s.substr(digits + 1);
    if (!rest.empty() && rest.front() == ' ') return trim_front(rest);
  }
  return s;
}

}  // namespace

SkillIR build_ir(const RawAst& ast) {
  SkillIR ir;
  ir.name = ast.frontmatter.name;
  ir.version = ast.frontmatter.version;
  ir.description = ast.frontmatter.description;
  ir.mcp_servers = ast.frontmatter.mcp_servers;
  ir.source_hash = ast.source_hash;

  for (const auto& decl : ast.frontmatter.declared_permissions) {
    const auto kind = permission_kind_from(decl.kind);
    if (!kind) {
      fail_type("unknown permission kind '" + decl.kind +
                "' (expected network, filesystem, process, or database)");
    }
    if (decl.scope.empty()) {
      fail_type("permission scope must be nonempty");
    }
    ir.permissions.push_back(Permission{*kind, decl.scope, decl.read_only});
  }

  std::string section_title;
  int next_order = 0;
  for (const auto& block : ast.blocks) {
    if (const auto* section = std::get_if<Section>(&block.node)) {
      section_title = section->title;
    } else if (const auto* step = std::get_if<ProcedureStep>(&block.node)) {
      if (step->text.empty()) continue;  // a bare marker carries no instruction
      ir.procedures.push_back(Procedure{++next_order, step->text, step->critical_marker});
    } else if (const auto* schema = std::get_if<SchemaBlock>(&block.node)) {
      if (!ir.input_schema) {
        ir.input_schema = parse_schema_json(schema->raw_json_text, block.span);
      }
    } else if (const auto* example = std::get_if<ExamplePair>(&block.node)) {
      ir.examples.push_back(ExampleIR{example->input_text, example->output_text});
    } else if (const auto* code = std::get_if<CodeBlock>(&block.node)) {
      ir.code_blocks.push_back(CodeSnippet{code->language_tag, code->content});
    } else if (const auto* para = std::get_if<Paragraph>(&block.node)) {
      if (section_has_role(section_title, "constraint")) {
        AntiSkillConstraint constraint;
        constraint.source = kAuthorSource;
        constraint.content = std::string(strip_list_marker(para->text));
        constraint.level = ConstraintLevel::warning;
        if (constraint.content.empty()) continue;
        const bool duplicate =
            std::any_of(ir.anti_skill_constraints.begin(), ir.anti_skill_constraints.end(),
                        [&](const AntiSkillConstraint& c) {
                          return c.source == constraint.source && c.content == constraint.content;
                        });
        if (!duplicate) ir.anti_skill_constraints.push_back(std::move(constraint));
      }
    }
  }

  if (const auto* mode = ast.frontmatter.find_extra("mode")) {
    if (*mode == "parallel") {
      ir.mode = ExecutionMode::parallel;
    } else if (*mode == "sequential") {
      ir.mode = ExecutionMode::sequential;
    } else {
      fail_type("illegal mode '" + *mode + "' (expected sequential or parallel)");
    }
  }
  if (const auto* hint = ast.frontmatter.find_extra("security_level")) {
    const auto level = security_level_from(*hint);
    if (!level) {
      fail_type("illegal security_level '" + *hint +
                "' (expected low, medium, high, or critical)");
    }
    ir.author_security_hint = *level;
  }

  ir.security_level = SecurityLevel::low;
  ir.hitl_required = false;
  ir.requires_yaml_optimization = detect_yaml_optimization(ir.input_schema);
  return ir;
}

nlohmann::ordered_json ir_to_json(const SkillIR& ir) {
  using json = nlohmann::ordered_json;
  json out;
  out["name"] = ir.name;
  out["version"] = ir.version;
  out["description"] = ir.description;
  if (!ir.mcp_servers.empty()) out["mcp_servers"] = ir.mcp_servers;
  if (ir.input_schema) out["input_schema"] = schema_to_json(*ir.input_schema);
  out["security_level"] = std::string(to_string(ir.security_level));
  out["hitl_required"] = ir.hitl_required;
  if (!ir.permissions.empty()) {
    json perms = json::array();
    for (const auto& p : ir.permissions) {
      perms.push_back({{"kind", std::string(to_string(p.kind))},
                       {"scope", p.scope},
                       {"read_only", p.read_only}});
    }
    out["permissions"] = std::move(perms);
  }
  if (!ir.procedures.empty()) {
    json procs = json::array();
    for (const auto& p : ir.procedures) {
      json entry;
      entry["order"] = p.order;
      entry["instruction"] = p.instruction;
      if (p.is_critical) entry["is_critical"] = true;
      procs.push_back(std::move(entry));
    }
    out["procedures"] = std::move(procs);
  }
  if (!ir.anti_skill_constraints.empty()) {
    json constraints = json::array();
    for (const auto& c : ir.anti_skill_constraints) {
      constraints.push_back({{"source", c.source},
                             {"content", c.content},
                             {"level", std::string(to_string(c.level))},
                             {"scope", c.scope}});
    }
    out["anti_skill_constraints"] = std::move(constraints);
  }
  out["requires_yaml_optimization"] = ir.requires_yaml_optimization;
  out["mode"] = std::string(to_string(ir.mode));
  if (!ir.examples.empty()) {
    json examples = json::array();
    for (const auto& e : ir.examples) {
      examples.push_back({{"input", e.input_text}, {"output", e.output_text}});
    }
    out["examples"] = std::move(examples);
  }
  if (!ir.code_blocks.empty()) {
    json code = json::array();
    for (const auto& c : ir.code_blocks) {
      code.push_back({{"language", c.language_tag}, {"content", c.content}});
    }
    out["code_blocks"] = std::move(code);
  }
  if (ir.author_security_hint) {
    out["author_security_hint"] = std::string(to_string(*ir.author_security_hint));
  }
  out["source_hash"] = ir.source_hash;
  return out;
}

std::string serialize_ir(const SkillIR& ir) { return ir_to_json(ir).dump(2) + "\n"; }

namespace {

template <typename T>
T require_enum(const std::optional<T>& value, const std::string& what) {
  if (!value) throw IrFormatError("IR text has an illegal " + what);
  return *value;
}

}  // namespace

SkillIR deserialize_ir(std::string_view text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IrFormatError(std::string("IR text is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw IrFormatError("IR text must be a JSON object");

  try {
    SkillIR ir;
    ir.name = doc.value("name", std::string());
    ir.version = doc.value("version", std::string());
    ir.description = doc.value("description", std::string());
    if (doc.contains("mcp_servers")) {
      ir.mcp_servers = doc.at("mcp_servers").get<std::vector<std::string>>();
    }
    if (doc.contains("input_schema")) {
      try {
        ir.input_schema = schema_from_json(doc.at("input_schema"));
      } catch (const SchemaValidationError& e) {
        throw IrFormatError(e.what());
      }
    }
    ir.security_level =
        require_enum(security_level_from(doc.value("security_level", "low")), "security_level");
    ir.hitl_required = doc.value("hitl_required", false);
    if (doc.contains("permissions")) {
      for (const auto& entry : doc.at("permissions")) {
        Permission p;
        p.kind = require_enum(permission_kind_from(entry.value("kind", "")), "permission kind");
        p.scope = entry.value("scope", std::string());
        p.read_only = entry.value("read_only", true);
        ir.permissions.push_back(std::move(p));
      }
    }
    if (doc.contains("procedures")) {
      for (const auto& entry : doc.at("procedures")) {
        Procedure p;
        p.order = entry.value("order", 0);
        p.instruction = entry.value("instruction", std::string());
        p.is_critical = entry.value("is_critical", false);
        ir.procedures.push_back(std::move(p));
      }
    }
    if (doc.contains("anti_skill_constraints")) {
      for (const auto& entry : doc.at("anti_skill_constraints")) {
        AntiSkillConstraint c;
        c.source = entry.value("source", std::string());
        c.content = entry.value("content", std::string());
        c.level =
            require_enum(constraint_level_from(entry.value("level", "warning")), "constraint level");
        c.scope = entry.value("scope", std::string("global"));
        ir.anti_skill_constraints.push_back(std::move(c));
      }
    }
    ir.requires_yaml_optimization = doc.value("requires_yaml_optimization", false);
    const std::string mode = doc.value("mode", "sequential");
    if (mode == "parallel") {
      ir.mode = ExecutionMode::parallel;
    } else if (mode == "sequential") {
      ir.mode = ExecutionMode::sequential;
    } else {
      throw IrFormatError("IR text has an illegal mode '" + mode + "'");
    }
    if (doc.contains("examples")) {
      for (const auto& entry : doc.at("examples")) {
        ir.examples.push_back(
            ExampleIR{entry.value("input", std::string()), entry.value("output", std::string())});
      }
    }
    if (doc.contains("code_blocks")) {
      for (const auto& entry : doc.at("code_blocks")) {
        ir.code_blocks.push_back(CodeSnippet{entry.value("language", std::string()),
                                             entry.value("content", std::string())});
      }
    }
    if (doc.contains("author_security_hint")) {
      ir.author_security_hint = require_enum(
          security_level_from(doc.at("author_security_hint").get<std::string>()),
          "author_security_hint");
    }
    ir.source_hash = doc.value("source_hash", std::string());
    return ir;
  } catch (const nlohmann::json::exception& e) {
    throw IrFormatError(std::string("IR text has a malformed field: ") + e.what());
  }
}

}  // namespace skillc
